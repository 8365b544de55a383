#include "biasminer/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace biasminer {

namespace {

using json = nlohmann::ordered_json;

std::string tagged_token(const Item& item) {
    switch (item.modality) {
        case Modality::QuestionWord: return "q:" + item.token;
        case Modality::VisualWord: return item.token;  // already "v:<index>"
        case Modality::AnswerWord: return "a:" + item.token;
    }
    return item.token;
}

Item untag_token(const std::string& tagged) {
    if (tagged.size() < 3 || tagged[1] != ':')
        throw MalformedReport("bad tagged token '" + tagged + "'");
    const std::string rest = tagged.substr(2);
    switch (tagged[0]) {
        case 'q': return Item{rest, Modality::QuestionWord};
        case 'v': return Item{tagged, Modality::VisualWord};  // keep the v: prefix
        case 'a': return Item{rest, Modality::AnswerWord};
        default: throw MalformedReport("bad modality tag in '" + tagged + "'");
    }
}

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string emit_table(const RuleSet& rules, const Vocabulary& vocab) {
    std::ostringstream out;
    out << "antecedent | visual | consequent | support | confidence\n";
    for (const auto& rule : rules.rules) {
        std::string words, visual;
        for (ItemId id : rule.antecedent) {
            const Item& item = vocab.item(id);
            if (item.modality == Modality::VisualWord) {
                if (!visual.empty()) visual += ' ';
                visual += item.token;
            } else {
                if (!words.empty()) words += ' ';
                words += item.token;
                if (item.modality == Modality::AnswerWord) words += '*';
            }
        }
        std::string consequent;
        for (ItemId id : rule.consequent) {
            const Item& item = vocab.item(id);
            if (!consequent.empty()) consequent += ' ';
            consequent += item.token;
            if (item.modality == Modality::AnswerWord) consequent += '*';
        }
        out << words << " | " << visual << " | " << consequent << " | " << rule.support << " | "
            << two_decimals(rule.confidence()) << '\n';
    }
    return out.str();
}

std::string emit_structured(const RuleSet& rules, const Vocabulary& vocab) {
    std::ostringstream out;
    json head;
    head["type"] = "ruleset";
    head["version"] = 1;
    head["min_support"] = rules.provenance.resolved_support;
    head["min_confidence"] = rules.provenance.min_confidence;
    head["max_consequent_size"] = rules.provenance.max_consequent_size;
    head["db_fingerprint"] = rules.provenance.db_fingerprint;
    head["rule_count"] = rules.rules.size();
    out << head.dump() << '\n';
    for (const auto& rule : rules.rules) {
        json doc;
        json antecedent = json::array();
        for (ItemId id : rule.antecedent) antecedent.push_back(tagged_token(vocab.item(id)));
        json consequent = json::array();
        for (ItemId id : rule.consequent) consequent.push_back(tagged_token(vocab.item(id)));
        doc["antecedent"] = std::move(antecedent);
        doc["consequent"] = std::move(consequent);
        doc["support"] = rule.support;
        doc["antecedent_support"] = rule.antecedent_support;
        doc["confidence"] = rule.confidence();
        out << doc.dump() << '\n';
    }
    return out.str();
}

}  // namespace

ReportFormat report_format_from_string(std::string_view s) {
    if (s == "table") return ReportFormat::Table;
    if (s == "structured") return ReportFormat::Structured;
    throw InvalidFormat("unknown report format '" + std::string(s) +
                        "' (expected 'table' or 'structured')");
}

std::string emit_report(const RuleSet& rules, const Vocabulary& vocab, ReportFormat format) {
    switch (format) {
        case ReportFormat::Table: return emit_table(rules, vocab);
        case ReportFormat::Structured: return emit_structured(rules, vocab);
    }
    throw InvalidFormat("unknown report format");
}

RuleSet parse_structured_report(std::string_view text, Vocabulary& vocab) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw MalformedReport("empty report");

    RuleSet result;
    json head;
    try {
        head = json::parse(line);
        if (head.at("type").get<std::string>() != "ruleset")
            throw MalformedReport("first line is not a ruleset header");
        result.provenance.resolved_support = head.at("min_support").get<std::uint32_t>();
        result.provenance.min_confidence = head.at("min_confidence").get<double>();
        result.provenance.max_consequent_size = head.at("max_consequent_size").get<std::uint32_t>();
        result.provenance.db_fingerprint = head.at("db_fingerprint").get<std::uint64_t>();
    } catch (const json::exception& e) {
        throw MalformedReport(std::string("bad ruleset header: ") + e.what());
    }

    auto resolve = [&vocab](const json& tokens) {
        std::vector<ItemId> ids;
        ids.reserve(tokens.size());
        for (const auto& t : tokens) {
            const Item item = untag_token(t.get<std::string>());
            if (vocab.frozen()) {
                const auto id = vocab.find(item.token, item.modality);
                if (!id)
                    throw MalformedReport("token '" + item.token +
                                          "' is not in the (frozen) vocabulary");
                ids.push_back(*id);
            } else {
                ids.push_back(vocab.intern(item.token, item.modality));
            }
        }
        std::sort(ids.begin(), ids.end());
        return ids;
    };

    std::size_t declared = head.value("rule_count", std::size_t(0));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
            AssociationRule rule;
            rule.antecedent = resolve(doc.at("antecedent"));
            rule.consequent = resolve(doc.at("consequent"));
            rule.support = doc.at("support").get<std::uint32_t>();
            rule.antecedent_support = doc.at("antecedent_support").get<std::uint32_t>();
            result.rules.push_back(std::move(rule));
        } catch (const json::exception& e) {
            throw MalformedReport(std::string("bad rule line: ") + e.what());
        }
    }
    if (result.rules.size() != declared)
        throw MalformedReport("rule_count mismatch: header declares " + std::to_string(declared) +
                              ", found " + std::to_string(result.rules.size()));
    return result;
}

void write_rules_file(const RuleSet& rules, const Vocabulary& vocab, ReportFormat format,
                      const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << emit_report(rules, vocab, format);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

RuleSet load_rules_file(const std::filesystem::path& path, Vocabulary& vocab) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_structured_report(buf.str(), vocab);
}

}  // namespace biasminer
