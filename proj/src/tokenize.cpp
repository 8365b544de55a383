#include "biasminer/tokenize.hpp"

#include <cctype>

namespace biasminer {

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "a",  "an", "and", "are", "as",   "at",  "be", "by",   "for", "from", "in",
        "is", "it", "of",  "on",  "that", "the", "to", "with",
    };
    return words;
}

std::vector<std::string> tokenize_question(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!config.remove_stopwords || !default_stopwords().contains(current))
            tokens.push_back(current);
        current.clear();
    };
    for (unsigned char c : text) {
        if (c == '\'') continue;
        if (std::isalnum(c) || c >= 0x80) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

}  // namespace biasminer
