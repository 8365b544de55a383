#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "biasminer/miner.hpp"
#include "biasminer/vocab.hpp"

namespace biasminer {

// Rule A -> C. support counts transactions containing A ∪ C;
// antecedent_support counts transactions containing A, so
// confidence = support / antecedent_support is an exact count ratio.
struct AssociationRule {
    std::vector<ItemId> antecedent;
    std::vector<ItemId> consequent;
    std::uint32_t support = 0;
    std::uint32_t antecedent_support = 0;

    double confidence() const {
        return antecedent_support == 0 ? 0.0
                                       : double(support) / double(antecedent_support);
    }
    bool operator==(const AssociationRule&) const = default;
};

struct RuleConfig {
    double min_confidence = 0.2;
    SupportThreshold min_support = SupportThreshold::absolute(30);
    std::uint32_t max_consequent_size = 1;
};

struct RuleProvenance {
    std::uint32_t resolved_support = 0;
    double min_confidence = 0.0;
    std::uint32_t max_consequent_size = 1;
    std::uint64_t db_fingerprint = 0;

    bool operator==(const RuleProvenance&) const = default;
};

// Rules in canonical order: antecedent size, antecedent ids, consequent
// size, consequent ids. No duplicate (antecedent, consequent) pairs.
struct RuleSet {
    std::vector<AssociationRule> rules;
    RuleProvenance provenance;

    bool operator==(const RuleSet&) const = default;
};

// FNV-1a over the index contents; recorded in RuleSet provenance so a rule
// dump can be matched back to the database it came from.
std::uint64_t db_fingerprint(const BitmapIndex& index);

// For every frequent itemset F (|F| >= 2) and every non-empty proper subset
// C with |C| <= max_consequent_size, emits F\C -> C when the exact
// confidence support(F)/support(F\C) >= min_confidence. Both thresholds are
// inclusive. The frequent list must be subset-complete for its threshold;
// a missing antecedent support raises IncompleteLattice.
RuleSet generate_rules(const std::vector<Itemset>& frequent, const BitmapIndex& index,
                       const RuleConfig& config);

// Keeps exactly the rules whose consequent is all answer words and whose
// antecedent is all question or visual words. Idempotent, order-preserving.
RuleSet causal_filter(const RuleSet& rules, const Vocabulary& vocab);

// Rules whose antecedent contains every query term (as question words),
// ranked by confidence desc (exact ratio compare), support desc, then
// canonical antecedent/consequent order. Unknown terms yield an empty list.
std::vector<AssociationRule> query_rules(const RuleSet& rules, const Vocabulary& vocab,
                                         const std::vector<std::string>& terms);

// Verification oracle: enumerates all disjoint non-empty (A, C) pairs over
// occurring items with |C| <= max_consequent_size and counts supports by
// direct scan. Same contract as generate_rules ∘ mine_frequent.
RuleSet brute_force_rules(const TransactionDB& db, const RuleConfig& config,
                          std::size_t max_items = 20);

}  // namespace biasminer
