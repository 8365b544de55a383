#include "biasminer/vocab.hpp"

#include <cctype>
#include <limits>

namespace biasminer {

const char* to_string(Modality m) {
    switch (m) {
        case Modality::QuestionWord: return "question";
        case Modality::VisualWord: return "visual";
        case Modality::AnswerWord: return "answer";
    }
    return "?";
}

std::optional<Modality> modality_from_string(std::string_view s) {
    if (s == "question") return Modality::QuestionWord;
    if (s == "visual") return Modality::VisualWord;
    if (s == "answer") return Modality::AnswerWord;
    return std::nullopt;
}

std::string visual_word_token(std::uint32_t codeword) {
    return "v:" + std::to_string(codeword);
}

namespace {

std::string normalize_token(std::string_view token, Modality modality) {
    if (token.empty()) throw InvalidItem("empty token");
    std::string out;
    out.reserve(token.size());
    for (unsigned char c : token) {
        if (c == '\t' || c == '\n' || c == '\r')
            throw InvalidItem("token contains control whitespace: '" + std::string(token) + "'");
        if (modality != Modality::VisualWord)
            c = static_cast<unsigned char>(std::tolower(c));
        out.push_back(static_cast<char>(c));
    }
    return out;
}

}  // namespace

ItemId Vocabulary::intern(std::string_view token, Modality modality) {
    Item key{normalize_token(token, modality), modality};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    if (frozen_)
        throw FrozenVocabulary("cannot intern '" + key.token + "' (" + to_string(modality) +
                               "): vocabulary is frozen");
    if (items_.size() > std::numeric_limits<ItemId>::max())
        throw Error("vocabulary overflow");
    const ItemId id = static_cast<ItemId>(items_.size());
    items_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<ItemId> Vocabulary::find(std::string_view token, Modality modality) const {
    if (token.empty()) return std::nullopt;
    Item key;
    try {
        key = Item{normalize_token(token, modality), modality};
    } catch (const InvalidItem&) {
        return std::nullopt;
    }
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Item& Vocabulary::item(ItemId id) const {
    if (id >= items_.size())
        throw UnknownItem("item id " + std::to_string(id) + " out of range (vocabulary size " +
                          std::to_string(items_.size()) + ")");
    return items_[id];
}

std::size_t Vocabulary::count(Modality m) const {
    std::size_t n = 0;
    for (const auto& it : items_)
        if (it.modality == m) ++n;
    return n;
}

}  // namespace biasminer
