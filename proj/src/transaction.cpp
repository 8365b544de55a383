#include "biasminer/transaction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace biasminer {

std::string normalize_answer(std::string_view answer) {
    std::string out;
    out.reserve(answer.size());
    bool pending_space = false;
    for (unsigned char c : answer) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Transaction build_transaction(const IngestRecord& record,
                              std::optional<std::uint32_t> visual_word, Vocabulary& vocab,
                              const TokenizerConfig& tokenizer) {
    const std::string answer = normalize_answer(record.answer);
    if (answer.empty())
        throw InvalidRecord("record '" + record.record_id + "' has an empty answer");

    std::vector<ItemId> ids;
    auto tokens = tokenize_question(record.question, tokenizer);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    ids.reserve(tokens.size() + 2);
    for (const auto& tok : tokens) ids.push_back(vocab.intern(tok, Modality::QuestionWord));
    if (visual_word)
        ids.push_back(vocab.intern(visual_word_token(*visual_word), Modality::VisualWord));
    ids.push_back(vocab.intern(answer, Modality::AnswerWord));

    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return Transaction{record.record_id, std::move(ids)};
}

// ---- db persistence --------------------------------------------------------

namespace {

constexpr const char* kDbMagic = "# biasminer db 1";

void validate_transaction(const Transaction& t, const Vocabulary& vocab) {
    std::size_t visual = 0, answer = 0;
    ItemId prev = 0;
    bool first = true;
    for (ItemId id : t.items) {
        if (!first && id <= prev)
            throw MalformedDatabase("transaction '" + t.source_id +
                                    "' ids are not strictly increasing");
        first = false;
        prev = id;
        const Item& item = vocab.item(id);  // throws UnknownItem if unresolvable
        if (item.modality == Modality::VisualWord) ++visual;
        if (item.modality == Modality::AnswerWord) ++answer;
    }
    if (answer < 1)
        throw MalformedDatabase("transaction '" + t.source_id + "' has no answer item");
    if (visual > 1)
        throw MalformedDatabase("transaction '" + t.source_id + "' has multiple visual items");
}

}  // namespace

void save_db(const TransactionDB& db, std::ostream& out) {
    out << kDbMagic << '\n';
    out << "vocab " << db.vocabulary.size() << '\n';
    for (std::size_t id = 0; id < db.vocabulary.size(); ++id) {
        const Item& item = db.vocabulary.item(static_cast<ItemId>(id));
        out << id << '\t' << to_string(item.modality) << '\t' << item.token << '\n';
    }
    out << "transactions " << db.transactions.size() << '\n';
    for (const auto& t : db.transactions) {
        out << t.source_id << '\t';
        for (std::size_t i = 0; i < t.items.size(); ++i) {
            if (i) out << ' ';
            out << t.items[i];
        }
        out << '\n';
    }
}

void save_db(const TransactionDB& db, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    save_db(db, out);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

namespace {

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedDatabase(std::string("truncated file: missing ") + what);
    return line;
}

std::size_t parse_count(const std::string& line, const char* keyword) {
    std::istringstream ss(line);
    std::string word;
    std::size_t n = 0;
    if (!(ss >> word >> n) || word != keyword)
        throw MalformedDatabase("expected '" + std::string(keyword) + " <count>', got '" + line + "'");
    return n;
}

}  // namespace

TransactionDB load_db(std::istream& in) {
    if (next_line(in, "header") != kDbMagic)
        throw MalformedDatabase(std::string("bad header, expected '") + kDbMagic + "'");

    TransactionDB db;
    const std::size_t vocab_count = parse_count(next_line(in, "vocab count"), "vocab");
    for (std::size_t i = 0; i < vocab_count; ++i) {
        const std::string line = next_line(in, "vocabulary entry");
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw MalformedDatabase("bad vocabulary line: '" + line + "'");
        std::size_t id = 0;
        const auto [ptr, ec] = std::from_chars(line.data(), line.data() + tab1, id);
        if (ec != std::errc() || ptr != line.data() + tab1 || id != i)
            throw MalformedDatabase("vocabulary ids must be dense, got line '" + line + "'");
        const auto modality = modality_from_string(line.substr(tab1 + 1, tab2 - tab1 - 1));
        if (!modality) throw MalformedDatabase("unknown modality in line '" + line + "'");
        const std::string token = line.substr(tab2 + 1);
        ItemId got;
        try {
            got = db.vocabulary.intern(token, *modality);
        } catch (const InvalidItem& e) {
            throw MalformedDatabase(std::string("bad vocabulary token: ") + e.what());
        }
        if (got != i) throw MalformedDatabase("duplicate vocabulary entry: '" + line + "'");
    }

    const std::size_t txn_count = parse_count(next_line(in, "transaction count"), "transactions");
    db.transactions.reserve(txn_count);
    for (std::size_t i = 0; i < txn_count; ++i) {
        const std::string line = next_line(in, "transaction");
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw MalformedDatabase("bad transaction line: '" + line + "'");
        Transaction t;
        t.source_id = line.substr(0, tab);
        const char* p = line.data() + tab + 1;
        const char* end = line.data() + line.size();
        while (p < end) {
            if (*p == ' ') {
                ++p;
                continue;
            }
            ItemId id = 0;
            const auto [ptr, ec] = std::from_chars(p, end, id);
            if (ec != std::errc()) throw MalformedDatabase("bad item id in line: '" + line + "'");
            t.items.push_back(id);
            p = ptr;
        }
        try {
            validate_transaction(t, db.vocabulary);
        } catch (const UnknownItem& e) {
            throw MalformedDatabase(std::string("unresolvable item id: ") + e.what());
        }
        db.transactions.push_back(std::move(t));
    }
    db.vocabulary.freeze();
    return db;
}

TransactionDB load_db(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return load_db(in);
}

// ---- ingestion records -----------------------------------------------------

namespace {

using json = nlohmann::ordered_json;

std::vector<double> finite_reals(const json& arr, const char* what) {
    if (!arr.is_array()) throw InvalidRecord(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) {
        if (!v.is_number()) throw InvalidRecord(std::string(what) + " entries must be numbers");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw InvalidRecord(std::string(what) + " entries must be finite");
        out.push_back(d);
    }
    return out;
}

}  // namespace

IngestRecord parse_ingest_record(std::string_view json_line) {
    json doc;
    try {
        doc = json::parse(json_line);
    } catch (const json::exception& e) {
        throw InvalidRecord(std::string("bad JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidRecord("record must be a JSON object");

    IngestRecord rec;
    try {
        rec.record_id = doc.at("record_id").get<std::string>();
        rec.question = doc.at("question").get<std::string>();
        rec.answer = doc.at("answer").get<std::string>();
    } catch (const json::exception& e) {
        throw InvalidRecord(std::string("missing required field: ") + e.what());
    }

    if (doc.contains("attention") && !doc["attention"].is_null()) {
        const auto& att = doc["attention"];
        if (!att.is_array() || att.empty())
            throw InvalidRecord("attention must be a non-empty array of arrays");
        std::vector<std::vector<double>> grid;
        grid.reserve(att.size());
        for (const auto& row : att) grid.push_back(finite_reals(row, "attention row"));
        try {
            rec.attention = AttentionMap::from_rows(grid);
        } catch (const Error& e) {
            throw InvalidRecord(std::string("bad attention grid: ") + e.what());
        }
    }
    if (doc.contains("feature") && !doc["feature"].is_null())
        rec.feature = finite_reals(doc["feature"], "feature");
    if (doc.contains("codeword") && !doc["codeword"].is_null()) {
        if (!doc["codeword"].is_number_unsigned())
            throw InvalidRecord("codeword must be a non-negative integer");
        rec.codeword = doc["codeword"].get<std::uint32_t>();
    }
    if (rec.feature && rec.codeword)
        throw InvalidRecord("record '" + rec.record_id + "' has both feature and codeword");
    return rec;
}

std::string serialize_ingest_record(const IngestRecord& record) {
    json doc;
    doc["record_id"] = record.record_id;
    doc["question"] = record.question;
    doc["answer"] = record.answer;
    if (record.attention) {
        json rows = json::array();
        for (std::uint32_t r = 0; r < record.attention->rows(); ++r) {
            json row = json::array();
            for (std::uint32_t c = 0; c < record.attention->cols(); ++c)
                row.push_back(record.attention->at(r, c));
            rows.push_back(std::move(row));
        }
        doc["attention"] = std::move(rows);
    }
    if (record.feature) doc["feature"] = *record.feature;
    if (record.codeword) doc["codeword"] = *record.codeword;
    return doc.dump();
}

void save_ingest_records(const std::vector<IngestRecord>& records,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    for (const auto& rec : records) out << serialize_ingest_record(rec) << '\n';
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void for_each_ingest_record(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, const IngestRecord*, const std::string&)>& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const IngestRecord rec = parse_ingest_record(line);
            fn(line_no, &rec, {});
        } catch (const InvalidRecord& e) {
            fn(line_no, nullptr, e.what());
        }
    }
}

std::vector<IngestRecord> load_ingest_records(const std::filesystem::path& path) {
    std::vector<IngestRecord> records;
    for_each_ingest_record(path, [&](std::size_t line_no, const IngestRecord* rec,
                                     const std::string& error) {
        if (!rec)
            throw InvalidRecord("line " + std::to_string(line_no) + ": " + error);
        records.push_back(*rec);
    });
    return records;
}

}  // namespace biasminer
