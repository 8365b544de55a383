#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "biasminer/attention.hpp"
#include "biasminer/tokenize.hpp"
#include "biasminer/vocab.hpp"

namespace biasminer {

// One mined row: the deduplicated item-id set of a (question, attended
// region, answer) triplet. Ids are sorted strictly increasing.
struct Transaction {
    std::string source_id;
    std::vector<ItemId> items;

    bool operator==(const Transaction&) const = default;
};

struct TransactionDB {
    Vocabulary vocabulary;
    std::vector<Transaction> transactions;

    bool operator==(const TransactionDB& other) const {
        return vocabulary == other.vocabulary && transactions == other.transactions;
    }
};

// One input row of the ingestion file. feature and codeword are mutually
// exclusive; attention is independent of both.
struct IngestRecord {
    std::string record_id;
    std::string question;
    std::string answer;
    std::optional<AttentionMap> attention;
    std::optional<std::vector<double>> feature;
    std::optional<std::uint32_t> codeword;
};

// Builds the transaction {question words} ∪ {v:<visual_word>} ∪ {answer}.
// Question tokens collapse to set semantics; the answer string is interned
// as one AnswerWord item (answers are atomic classes, "hot dog" stays one
// item). Throws InvalidRecord if the answer is empty after normalization.
Transaction build_transaction(const IngestRecord& record,
                              std::optional<std::uint32_t> visual_word, Vocabulary& vocab,
                              const TokenizerConfig& tokenizer = {});

// Lowercase, trim, collapse internal whitespace runs to single spaces.
// Answers are atomic classes so this is the only normalization applied.
std::string normalize_answer(std::string_view answer);

// ---- transaction database persistence -------------------------------------
//
// Line-oriented text format, version 1:
//   # biasminer db 1
//   vocab <N>
//   <id>\t<modality>\t<token>          (N lines, ids dense 0..N-1)
//   transactions <M>
//   <source_id>\t<id> <id> ...         (M lines, ids sorted ascending)
//
// load_db returns a frozen vocabulary; a persisted database is an artifact
// to mine, not to extend. Round-trip is the identity on content.

void save_db(const TransactionDB& db, std::ostream& out);
void save_db(const TransactionDB& db, const std::filesystem::path& path);
TransactionDB load_db(std::istream& in);
TransactionDB load_db(const std::filesystem::path& path);

// ---- ingestion records (JSONL) ---------------------------------------------
//
// One JSON object per line:
//   {"record_id": "...", "question": "...", "answer": "...",
//    "attention": [[...], ...], "feature": [...], "codeword": 3}
// attention, feature and codeword are optional; attention is a row-major
// array of arrays of non-negative reals.

IngestRecord parse_ingest_record(std::string_view json_line);
std::string serialize_ingest_record(const IngestRecord& record);

void save_ingest_records(const std::vector<IngestRecord>& records,
                         const std::filesystem::path& path);

// Streams records from a JSONL file. The callback receives the 1-based line
// number and either a parsed record or nullptr plus the parse error message.
// Blank lines are skipped. Throws IoError if the file cannot be opened.
void for_each_ingest_record(
    const std::filesystem::path& path,
    const std::function<void(std::size_t line_no, const IngestRecord*, const std::string& error)>&
        fn);

std::vector<IngestRecord> load_ingest_records(const std::filesystem::path& path);

}  // namespace biasminer
