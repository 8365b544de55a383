#include "biasminer/miner.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <unordered_set>

#include "biasminer/parallel.hpp"
#include "biasminer/ratio.hpp"

namespace biasminer {

// ---- BitmapIndex -----------------------------------------------------------

BitmapIndex BitmapIndex::build(const TransactionDB& db) {
    BitmapIndex index;
    index.transaction_count_ = static_cast<std::uint32_t>(db.transactions.size());
    index.item_count_ = db.vocabulary.size();
    index.words_ = (db.transactions.size() + 63) / 64;
    index.bits_.assign(index.item_count_ * index.words_, 0);
    for (std::size_t t = 0; t < db.transactions.size(); ++t) {
        const std::uint64_t word_bit = std::uint64_t(1) << (t % 64);
        const std::size_t word = t / 64;
        for (ItemId id : db.transactions[t].items) {
            if (id >= index.item_count_)
                throw UnknownItem("transaction contains item id " + std::to_string(id) +
                                  " outside the vocabulary");
            index.bits_[id * index.words_ + word] |= word_bit;
        }
    }
    return index;
}

std::span<const std::uint64_t> BitmapIndex::bits(ItemId item) const {
    if (item >= item_count_)
        throw UnknownItem("item id " + std::to_string(item) + " not in index");
    return {bits_.data() + item * words_, words_};
}

std::uint32_t BitmapIndex::item_support(ItemId item) const {
    std::uint32_t count = 0;
    for (const std::uint64_t w : bits(item)) count += std::popcount(w);
    return count;
}

std::uint32_t BitmapIndex::support(std::span<const ItemId> items) const {
    if (items.empty()) return transaction_count_;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i] >= item_count_)
            throw UnknownItem("item id " + std::to_string(items[i]) + " not in index");
        if (i > 0 && items[i] <= items[i - 1])
            throw Error("support() requires sorted duplicate-free items");
    }
    if (items.size() == 1) return item_support(items[0]);

    const std::uint64_t* first = bits_.data() + items[0] * words_;
    const std::uint64_t* second = bits_.data() + items[1] * words_;
    if (items.size() == 2) {
        std::uint32_t count = 0;
        for (std::size_t w = 0; w < words_; ++w) count += std::popcount(first[w] & second[w]);
        return count;
    }
    std::vector<std::uint64_t> acc(words_);
    for (std::size_t w = 0; w < words_; ++w) acc[w] = first[w] & second[w];
    for (std::size_t i = 2; i + 1 < items.size(); ++i) {
        const std::uint64_t* next = bits_.data() + items[i] * words_;
        for (std::size_t w = 0; w < words_; ++w) acc[w] &= next[w];
    }
    const std::uint64_t* last = bits_.data() + items.back() * words_;
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += std::popcount(acc[w] & last[w]);
    return count;
}

// ---- SupportThreshold --------------------------------------------------------

SupportThreshold SupportThreshold::absolute(std::uint64_t count) {
    if (count == 0) throw InvalidThreshold("absolute support threshold must be >= 1");
    SupportThreshold t;
    t.count_ = count;
    return t;
}

SupportThreshold SupportThreshold::relative(double fraction) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw InvalidThreshold("relative support threshold must be in (0, 1]");
    SupportThreshold t;
    t.fraction_ = fraction;
    t.relative_ = true;
    return t;
}

SupportThreshold SupportThreshold::parse(std::string_view text) {
    if (text.empty()) throw InvalidThreshold("empty support threshold");
    if (text.back() == '%') {
        const std::string number(text.substr(0, text.size() - 1));
        char* end = nullptr;
        const double percent = std::strtod(number.c_str(), &end);
        if (end != number.c_str() + number.size() || number.empty())
            throw InvalidThreshold("bad relative support threshold '" + std::string(text) + "'");
        return relative(percent / 100.0);
    }
    std::uint64_t count = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), count);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw InvalidThreshold("bad support threshold '" + std::string(text) + "'");
    return absolute(count);
}

std::uint32_t SupportThreshold::resolve(std::uint64_t transaction_count) const {
    std::uint64_t resolved = count_;
    if (relative_) resolved = std::max<std::uint64_t>(1, exact_ceil_fraction(fraction_, transaction_count));
    if (resolved == 0) throw InvalidThreshold("support threshold resolved to 0");
    if (resolved > 0xffffffffull) throw InvalidThreshold("support threshold exceeds 2^32");
    return static_cast<std::uint32_t>(resolved);
}

std::string SupportThreshold::describe() const {
    if (relative_) return std::to_string(fraction_ * 100.0) + "%";
    return std::to_string(count_);
}

// ---- mining -----------------------------------------------------------------

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

}  // namespace

std::vector<Itemset> mine_frequent(const BitmapIndex& index, const SupportThreshold& threshold,
                                   unsigned threads) {
    const std::uint32_t s = threshold.resolve(index.transaction_count());

    std::vector<Itemset> out;
    std::vector<Itemset> level;
    for (std::size_t id = 0; id < index.item_count(); ++id) {
        const std::uint32_t sup = index.item_support(static_cast<ItemId>(id));
        if (sup >= s) level.push_back(Itemset{{static_cast<ItemId>(id)}, sup});
    }

    while (!level.empty()) {
        out.insert(out.end(), level.begin(), level.end());

        std::unordered_set<std::vector<ItemId>, IdVectorHash> frequent_here;
        frequent_here.reserve(level.size() * 2);
        for (const auto& it : level) frequent_here.insert(it.items);

        // Prefix join over the (sorted) current level, then downward-closure
        // pruning. The join visits candidates in lexicographic order, which
        // is what makes the final output canonical.
        std::vector<std::vector<ItemId>> candidates;
        const std::size_t k = level.front().items.size() + 1;
        for (std::size_t i = 0; i < level.size(); ++i) {
            for (std::size_t j = i + 1; j < level.size(); ++j) {
                const auto& a = level[i].items;
                const auto& b = level[j].items;
                if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) break;
                std::vector<ItemId> candidate = a;
                candidate.push_back(b.back());
                bool all_subsets_frequent = true;
                if (k > 2) {
                    std::vector<ItemId> subset(candidate.begin() + 1, candidate.end());
                    for (std::size_t drop = 0; drop + 2 < candidate.size(); ++drop) {
                        // subset = candidate minus position `drop`; dropping
                        // either of the last two yields the parents, which
                        // are frequent by construction.
                        if (!frequent_here.contains(subset)) {
                            all_subsets_frequent = false;
                            break;
                        }
                        subset[drop] = candidate[drop];
                    }
                }
                if (all_subsets_frequent) candidates.push_back(std::move(candidate));
            }
        }

        std::vector<std::uint32_t> supports(candidates.size());
        parallel_for(candidates.size(), threads,
                     [&](std::size_t c) { supports[c] = index.support(candidates[c]); });

        std::vector<Itemset> next;
        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (supports[c] >= s) next.push_back(Itemset{std::move(candidates[c]), supports[c]});
        level = std::move(next);
    }
    return out;
}

std::vector<Itemset> brute_force_frequent(const TransactionDB& db,
                                          const SupportThreshold& threshold,
                                          std::size_t max_items) {
    const std::uint32_t s = threshold.resolve(db.transactions.size());

    std::vector<ItemId> occurring;
    {
        std::unordered_set<ItemId> seen;
        for (const auto& t : db.transactions) seen.insert(t.items.begin(), t.items.end());
        occurring.assign(seen.begin(), seen.end());
        std::sort(occurring.begin(), occurring.end());
    }
    if (occurring.size() > max_items || occurring.size() > 25)
        throw OracleTooLarge("brute-force oracle limited to " + std::to_string(std::min<std::size_t>(max_items, 25)) +
                             " occurring items, got " + std::to_string(occurring.size()));

    std::vector<Itemset> out;
    const std::size_t universe = occurring.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << universe); ++mask) {
        std::vector<ItemId> items;
        for (std::size_t b = 0; b < universe; ++b)
            if (mask & (std::uint64_t(1) << b)) items.push_back(occurring[b]);
        std::uint32_t count = 0;
        for (const auto& t : db.transactions)
            if (std::includes(t.items.begin(), t.items.end(), items.begin(), items.end())) ++count;
        if (count >= s) out.push_back(Itemset{std::move(items), count});
    }
    std::sort(out.begin(), out.end(), [](const Itemset& a, const Itemset& b) {
        if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
        return a.items < b.items;
    });
    return out;
}

void write_itemsets(std::ostream& out, const std::vector<Itemset>& itemsets,
                    const Vocabulary& vocab) {
    for (const auto& set : itemsets) {
        out << set.support << '\t';
        for (std::size_t i = 0; i < set.items.size(); ++i) {
            if (i) out << ' ';
            out << vocab.item(set.items[i]).token;
        }
        out << '\n';
    }
}

}  // namespace biasminer
