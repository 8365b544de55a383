#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biasminer/codebook.hpp"
#include "biasminer/transaction.hpp"

namespace biasminer {

// One rule planted into a generated dataset: records matching the template
// answer with `answer` at probability fire_rate, otherwise with a distractor
// answer. weight sets the template's share of the dataset.
struct PlantedBias {
    std::vector<std::string> question_template;
    std::optional<std::uint32_t> visual_word;
    std::string answer;
    double fire_rate = 1.0;
    double weight = 1.0;
};

enum class AttentionMode {
    Delta,    // all mass in a single cell
    Blob,     // Gaussian bump around a random cell
    Uniform,  // flat grid
};

struct SynthSpec {
    std::vector<PlantedBias> biases;
    std::vector<std::string> noise_vocab;    // distractor question tokens
    std::vector<std::string> noise_answers;  // distractor answers
    std::uint32_t record_count = 0;
    std::uint64_t seed = 0;
    AttentionMode attention_mode = AttentionMode::Blob;
    std::uint32_t feature_dim = 8;
    double centroid_separation = 10.0;  // blob sigma is separation / 10
    std::uint32_t codebook_k = 0;       // 0: max planted visual word + 4
    std::uint32_t grid_rows = 14;
    std::uint32_t grid_cols = 14;
    double noise_weight = 1.0;     // share of pure-distractor records
    double template_overlap = 0.0; // chance a distractor borrows a template token
};

// Realized (counted, not nominal) statistics for one planted bias. The
// language_* fields ignore the visual word, matching what a language-only
// ingestion of the same records would mine.
struct GroundTruthRule {
    std::vector<std::string> question_tokens;
    std::optional<std::uint32_t> visual_word;
    std::string answer;
    std::uint32_t support = 0;
    std::uint32_t antecedent_count = 0;
    std::uint32_t language_support = 0;
    std::uint32_t language_antecedent_count = 0;

    double confidence() const {
        return antecedent_count == 0 ? 0.0 : double(support) / double(antecedent_count);
    }
};

struct SynthOutput {
    std::vector<IngestRecord> records;
    std::vector<GroundTruthRule> ground_truth;
    Codebook codebook;  // reference codebook the features were drawn around
};

// Deterministic under (spec, seed). Ground truth is obtained by recounting
// the emitted records with the reference codebook doing the visual-word
// assignment, so supports and confidences are exact by construction.
// Throws InvalidSpec for infeasible specs.
SynthOutput generate(const SynthSpec& spec);

// JSONL ground-truth file, one planted rule per line.
void save_ground_truth(const std::vector<GroundTruthRule>& rules,
                       const std::filesystem::path& path);
std::vector<GroundTruthRule> load_ground_truth(const std::filesystem::path& path);

// JSON spec file for the CLI (fields mirror SynthSpec).
SynthSpec parse_synth_spec(std::string_view json_text);
SynthSpec load_synth_spec(const std::filesystem::path& path);

}  // namespace biasminer
