#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "biasminer/errors.hpp"

namespace biasminer {

// The three item namespaces of the tri-modal vocabulary. The same surface
// token in different modalities is a different item.
enum class Modality : std::uint8_t {
    QuestionWord = 0,
    VisualWord = 1,
    AnswerWord = 2,
};

const char* to_string(Modality m);
std::optional<Modality> modality_from_string(std::string_view s);

using ItemId = std::uint32_t;

struct Item {
    std::string token;
    Modality modality;

    bool operator==(const Item&) const = default;
};

struct ItemHash {
    std::size_t operator()(const Item& it) const noexcept {
        std::size_t h = std::hash<std::string>{}(it.token);
        return h * 31u + static_cast<std::size_t>(it.modality);
    }
};

// Canonical token for a visual code-word index, e.g. "v:17".
std::string visual_word_token(std::uint32_t codeword);

// Bidirectional map Item <-> dense ItemId. Question and answer tokens are
// normalized to ASCII lowercase on the way in; tokens may not contain tabs,
// newlines or carriage returns (they would break the line-oriented database
// format). Single-writer until freeze(); immutable and safe for concurrent
// reads afterwards.
class Vocabulary {
  public:
    // Returns the existing id for (token, modality) or assigns the next
    // dense one. On a frozen vocabulary, unknown items raise
    // FrozenVocabulary; known items are still returned.
    ItemId intern(std::string_view token, Modality modality);

    std::optional<ItemId> find(std::string_view token, Modality modality) const;

    // Reverse lookup; raises UnknownItem for out-of-range ids.
    const Item& item(ItemId id) const;

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    std::size_t count(Modality m) const;

    // Content equality: same items at the same ids. The frozen flag is a
    // mutation guard, not part of the persisted value, and is ignored here.
    bool operator==(const Vocabulary& other) const { return items_ == other.items_; }

  private:
    std::vector<Item> items_;
    std::unordered_map<Item, ItemId, ItemHash> index_;
    bool frozen_ = false;
};

}  // namespace biasminer
