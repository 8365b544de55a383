#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "biasminer/errors.hpp"

namespace biasminer {

using FeatureVector = std::vector<double>;

// k centroid vectors of a fixed dimension. If l2_normalized is set the
// centroids were trained on unit-normalized features and queries are
// normalized the same way before assignment.
struct Codebook {
    std::vector<FeatureVector> centroids;
    bool l2_normalized = false;

    std::size_t k() const { return centroids.size(); }
    std::size_t dim() const { return centroids.empty() ? 0 : centroids.front().size(); }

    bool operator==(const Codebook&) const = default;
};

struct CodebookConfig {
    std::uint32_t k = 1250;
    std::uint64_t seed = 0;
    std::uint32_t max_iterations = 100;
    double tolerance = 1e-6;  // relative inertia improvement for convergence
    bool l2_normalize = false;
    unsigned threads = 1;
};

struct TrainStats {
    // Inertia measured at each assignment step; non-increasing by
    // construction of Lloyd's algorithm.
    std::vector<double> inertia_per_iteration;
    bool converged = false;
};

// Lloyd's algorithm with seeded k-means++ initialization. Deterministic for
// a fixed seed, input order and tolerance, independent of thread count.
// Empty clusters are reseeded to the point farthest from its assigned
// centroid, so the result always has exactly k centroids.
// Throws InsufficientData if there are fewer than k vectors and
// DimensionMismatch if the vectors are not all the same dimension.
Codebook train_codebook(const std::vector<FeatureVector>& features, const CodebookConfig& config,
                        TrainStats* stats = nullptr);

// Index of the nearest centroid by squared Euclidean distance; ties go to
// the smallest index.
std::uint32_t assign_codeword(const Codebook& codebook, const FeatureVector& feature);

// Sum of squared distances from each feature to its assigned centroid.
double inertia(const Codebook& codebook, const std::vector<FeatureVector>& features);

// Text format, version 1:
//   # biasminer codebook 1
//   k <k>
//   d <d>
//   normalized <0|1>
//   <d space-separated values per centroid row, shortest round-trip reals>
void save_codebook(const Codebook& codebook, std::ostream& out);
void save_codebook(const Codebook& codebook, const std::filesystem::path& path);
Codebook load_codebook(std::istream& in);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace biasminer
