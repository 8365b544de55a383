#include "biasminer/rules.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "biasminer/ratio.hpp"

namespace biasminer {

namespace {

struct IdVectorHash {
    std::size_t operator()(const std::vector<ItemId>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (ItemId id : v) {
            h ^= id;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

bool canonical_rule_less(const AssociationRule& a, const AssociationRule& b) {
    if (a.antecedent.size() != b.antecedent.size())
        return a.antecedent.size() < b.antecedent.size();
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    if (a.consequent.size() != b.consequent.size())
        return a.consequent.size() < b.consequent.size();
    return a.consequent < b.consequent;
}

void validate_rule_config(const RuleConfig& config) {
    if (!(config.min_confidence > 0.0) || config.min_confidence > 1.0)
        throw ConfigError("min_confidence must be in (0, 1]");
    if (config.max_consequent_size == 0) throw ConfigError("max_consequent_size must be >= 1");
}

// Visits every size-`choose` index combination of [0, n) in lexicographic
// order.
template <typename Fn>
void for_each_combination(std::size_t n, std::size_t choose, Fn&& fn) {
    if (choose == 0 || choose > n) return;
    std::vector<std::size_t> pos(choose);
    for (std::size_t i = 0; i < choose; ++i) pos[i] = i;
    while (true) {
        fn(pos);
        std::size_t i = choose;
        while (i > 0 && pos[i - 1] == n - choose + (i - 1)) --i;
        if (i == 0) return;
        --i;
        ++pos[i];
        for (std::size_t j = i + 1; j < choose; ++j) pos[j] = pos[j - 1] + 1;
    }
}

}  // namespace

std::uint64_t db_fingerprint(const BitmapIndex& index) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(index.transaction_count());
    mix(index.item_count());
    for (std::size_t id = 0; id < index.item_count(); ++id)
        for (std::uint64_t word : index.bits(static_cast<ItemId>(id))) mix(word);
    return h;
}

RuleSet generate_rules(const std::vector<Itemset>& frequent, const BitmapIndex& index,
                       const RuleConfig& config) {
    validate_rule_config(config);
    const std::uint32_t s = config.min_support.resolve(index.transaction_count());

    std::unordered_map<std::vector<ItemId>, std::uint32_t, IdVectorHash> support_of;
    support_of.reserve(frequent.size() * 2);
    for (const auto& itemset : frequent) support_of.emplace(itemset.items, itemset.support);

    RuleSet result;
    result.provenance = RuleProvenance{s, config.min_confidence, config.max_consequent_size,
                                       db_fingerprint(index)};

    for (const auto& itemset : frequent) {
        const auto& f = itemset.items;
        if (f.size() < 2 || itemset.support < s) continue;
        const std::size_t max_c = std::min<std::size_t>(config.max_consequent_size, f.size() - 1);
        for (std::size_t csize = 1; csize <= max_c; ++csize) {
            for_each_combination(f.size(), csize, [&](const std::vector<std::size_t>& pos) {
                std::vector<ItemId> consequent;
                consequent.reserve(csize);
                std::vector<ItemId> antecedent;
                antecedent.reserve(f.size() - csize);
                std::size_t p = 0;
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (p < pos.size() && pos[p] == i) {
                        consequent.push_back(f[i]);
                        ++p;
                    } else {
                        antecedent.push_back(f[i]);
                    }
                }
                const auto it = support_of.find(antecedent);
                if (it == support_of.end())
                    throw IncompleteLattice(
                        "frequent itemset list is missing the support of a subset; was it mined "
                        "at the same threshold?");
                const std::uint32_t antecedent_support = it->second;
                if (ratio_at_least(itemset.support, antecedent_support, config.min_confidence))
                    result.rules.push_back(AssociationRule{std::move(antecedent),
                                                           std::move(consequent), itemset.support,
                                                           antecedent_support});
            });
        }
    }
    std::sort(result.rules.begin(), result.rules.end(), canonical_rule_less);
    return result;
}

RuleSet causal_filter(const RuleSet& rules, const Vocabulary& vocab) {
    RuleSet result;
    result.provenance = rules.provenance;
    for (const auto& rule : rules.rules) {
        const bool causal =
            std::all_of(rule.consequent.begin(), rule.consequent.end(),
                        [&](ItemId id) { return vocab.item(id).modality == Modality::AnswerWord; }) &&
            std::all_of(rule.antecedent.begin(), rule.antecedent.end(), [&](ItemId id) {
                const Modality m = vocab.item(id).modality;
                return m == Modality::QuestionWord || m == Modality::VisualWord;
            });
        if (causal) result.rules.push_back(rule);
    }
    return result;
}

std::vector<AssociationRule> query_rules(const RuleSet& rules, const Vocabulary& vocab,
                                         const std::vector<std::string>& terms) {
    std::vector<ItemId> term_ids;
    term_ids.reserve(terms.size());
    for (const auto& term : terms) {
        const auto id = vocab.find(term, Modality::QuestionWord);
        if (!id) return {};  // unknown token: nothing can match
        term_ids.push_back(*id);
    }
    std::sort(term_ids.begin(), term_ids.end());
    term_ids.erase(std::unique(term_ids.begin(), term_ids.end()), term_ids.end());

    std::vector<AssociationRule> matched;
    for (const auto& rule : rules.rules)
        if (std::includes(rule.antecedent.begin(), rule.antecedent.end(), term_ids.begin(),
                          term_ids.end()))
            matched.push_back(rule);

    std::sort(matched.begin(), matched.end(), [](const AssociationRule& a, const AssociationRule& b) {
        // confidence desc, compared as exact cross-products
        const std::uint64_t lhs = std::uint64_t(a.support) * b.antecedent_support;
        const std::uint64_t rhs = std::uint64_t(b.support) * a.antecedent_support;
        if (lhs != rhs) return lhs > rhs;
        if (a.support != b.support) return a.support > b.support;
        return canonical_rule_less(a, b);
    });
    return matched;
}

RuleSet brute_force_rules(const TransactionDB& db, const RuleConfig& config,
                          std::size_t max_items) {
    validate_rule_config(config);
    const std::uint32_t s = config.min_support.resolve(db.transactions.size());

    std::vector<ItemId> occurring;
    {
        std::unordered_set<ItemId> seen;
        for (const auto& t : db.transactions) seen.insert(t.items.begin(), t.items.end());
        occurring.assign(seen.begin(), seen.end());
        std::sort(occurring.begin(), occurring.end());
    }
    if (occurring.size() > max_items || occurring.size() > 25)
        throw OracleTooLarge("brute-force oracle limited to " +
                             std::to_string(std::min<std::size_t>(max_items, 25)) +
                             " occurring items, got " + std::to_string(occurring.size()));

    auto count_support = [&db](const std::vector<ItemId>& items) {
        std::uint32_t count = 0;
        for (const auto& t : db.transactions)
            if (std::includes(t.items.begin(), t.items.end(), items.begin(), items.end())) ++count;
        return count;
    };

    RuleSet result;
    result.provenance = RuleProvenance{s, config.min_confidence, config.max_consequent_size,
                                       db_fingerprint(BitmapIndex::build(db))};

    const std::size_t universe = occurring.size();
    const std::size_t max_c = std::min<std::size_t>(config.max_consequent_size, universe);
    for (std::size_t csize = 1; csize <= max_c; ++csize) {
        for_each_combination(universe, csize, [&](const std::vector<std::size_t>& pos) {
            std::vector<ItemId> consequent;
            std::vector<ItemId> rest;
            std::size_t p = 0;
            for (std::size_t i = 0; i < universe; ++i) {
                if (p < pos.size() && pos[p] == i) {
                    consequent.push_back(occurring[i]);
                    ++p;
                } else {
                    rest.push_back(occurring[i]);
                }
            }
            for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << rest.size()); ++mask) {
                std::vector<ItemId> antecedent;
                for (std::size_t b = 0; b < rest.size(); ++b)
                    if (mask & (std::uint64_t(1) << b)) antecedent.push_back(rest[b]);
                std::vector<ItemId> both;
                std::merge(antecedent.begin(), antecedent.end(), consequent.begin(),
                           consequent.end(), std::back_inserter(both));
                const std::uint32_t support = count_support(both);
                if (support < s) continue;
                const std::uint32_t antecedent_support = count_support(antecedent);
                if (ratio_at_least(support, antecedent_support, config.min_confidence))
                    result.rules.push_back(
                        AssociationRule{std::move(antecedent), consequent, support,
                                        antecedent_support});
            }
        });
    }
    std::sort(result.rules.begin(), result.rules.end(), canonical_rule_less);
    return result;
}

}  // namespace biasminer
