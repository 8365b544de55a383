#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "biasminer/transaction.hpp"

namespace biasminer {

// Vertical bitmap index: bit t of item i is set iff transaction t contains
// item i. Immutable after build; safe for concurrent reads.
class BitmapIndex {
  public:
    static BitmapIndex build(const TransactionDB& db);

    std::uint32_t transaction_count() const { return transaction_count_; }
    std::size_t item_count() const { return item_count_; }

    // Exact count of transactions containing all the given items, computed
    // by word-level AND + popcount. items must be sorted and duplicate-free;
    // the empty set has support transaction_count by convention.
    std::uint32_t support(std::span<const ItemId> items) const;

    std::uint32_t item_support(ItemId item) const;

    std::span<const std::uint64_t> bits(ItemId item) const;
    std::size_t words_per_item() const { return words_; }

  private:
    std::uint32_t transaction_count_ = 0;
    std::size_t item_count_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;  // item-major, words_ words per item
};

// Frequent id-set with its exact support count.
struct Itemset {
    std::vector<ItemId> items;
    std::uint32_t support = 0;

    bool operator==(const Itemset&) const = default;
};

// Either an absolute count >= 1 or a fraction in (0, 1] of the transaction
// count, resolved exactly (smallest count >= fraction * n, floor 1).
class SupportThreshold {
  public:
    static SupportThreshold absolute(std::uint64_t count);
    static SupportThreshold relative(double fraction);

    // Accepts "30" (absolute) or "1.5%" (relative). Throws InvalidThreshold.
    static SupportThreshold parse(std::string_view text);

    std::uint32_t resolve(std::uint64_t transaction_count) const;
    bool is_relative() const { return relative_; }
    std::string describe() const;

  private:
    SupportThreshold() = default;
    std::uint64_t count_ = 0;
    double fraction_ = 0.0;
    bool relative_ = false;
};

// All itemsets with support >= threshold, canonically ordered by size then
// lexicographic ids. Levelwise prefix-join candidate generation with
// downward-closure pruning; candidate counting parallelizes across the
// given thread count without affecting the output.
std::vector<Itemset> mine_frequent(const BitmapIndex& index, const SupportThreshold& threshold,
                                   unsigned threads = 1);

// Verification oracle: enumerates every non-empty subset of the items that
// occur at all and counts support by direct scan. Same output contract as
// mine_frequent. Throws OracleTooLarge beyond max_items occurring items.
std::vector<Itemset> brute_force_frequent(const TransactionDB& db,
                                          const SupportThreshold& threshold,
                                          std::size_t max_items = 20);

// Dump format: one line per itemset, "support<TAB>space-separated tokens",
// canonical order.
void write_itemsets(std::ostream& out, const std::vector<Itemset>& itemsets,
                    const Vocabulary& vocab);

}  // namespace biasminer
