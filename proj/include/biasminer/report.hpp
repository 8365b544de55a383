#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "biasminer/rules.hpp"

namespace biasminer {

enum class ReportFormat {
    Table,       // human-readable, mirrors the rule tables in the study output
    Structured,  // lossless JSONL with exact count pairs
};

ReportFormat report_format_from_string(std::string_view s);  // throws InvalidFormat

// Table format: header line, then one row per rule,
//   "<antecedent words> | <visual word or blank> | <consequent>* | <support> | <confidence>"
// with confidence rendered to two decimals. Answer words carry a trailing *.
//
// Structured format: first line a provenance object, then one JSON object
// per rule with modality-tagged tokens ("q:what", "v:12", "a:tennis"),
// support and antecedent_support (the exact confidence numerator and
// denominator) and the real-valued confidence. parse_structured_report is
// its exact inverse.
std::string emit_report(const RuleSet& rules, const Vocabulary& vocab, ReportFormat format);

// Parses the structured format back into a RuleSet, resolving tokens against
// the vocabulary (interning them when it is not frozen). Throws
// MalformedReport on any structural problem or unknown token in a frozen
// vocabulary.
RuleSet parse_structured_report(std::string_view text, Vocabulary& vocab);

void write_rules_file(const RuleSet& rules, const Vocabulary& vocab, ReportFormat format,
                      const std::filesystem::path& path);
RuleSet load_rules_file(const std::filesystem::path& path, Vocabulary& vocab);

}  // namespace biasminer
