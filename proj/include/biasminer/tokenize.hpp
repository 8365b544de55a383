#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace biasminer {

struct TokenizerConfig {
    // Drop common function words. Off by default: rule antecedents routinely
    // contain "what", "is", "how" and removing them destroys the rules the
    // miner is supposed to surface.
    bool remove_stopwords = false;
};

// Small English function-word list used when remove_stopwords is set.
const std::unordered_set<std::string>& default_stopwords();

// Lowercases, strips punctuation and splits on whitespace. Apostrophes are
// deleted ("what's" -> "whats"); every other non-alphanumeric ASCII byte acts
// as a separator. Bytes >= 0x80 are kept verbatim, so UTF-8 sequences pass
// through intact. Duplicates are preserved; transaction building dedupes.
std::vector<std::string> tokenize_question(std::string_view text,
                                           const TokenizerConfig& config = {});

}  // namespace biasminer
