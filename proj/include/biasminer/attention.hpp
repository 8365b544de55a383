#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "biasminer/errors.hpp"

namespace biasminer {

// Non-negative m x n grid, row-major. Construction validates that every
// entry is finite and >= 0.
class AttentionMap {
  public:
    AttentionMap(std::uint32_t rows, std::uint32_t cols, std::vector<double> values);

    // From row-major nested rows; all rows must have equal length.
    static AttentionMap from_rows(const std::vector<std::vector<double>>& rows);

    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    double at(std::uint32_t r, std::uint32_t c) const { return values_[r * cols_ + c]; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<double> values_;
};

// Inclusive grid-index box. Ordering is lexicographic on
// (top, left, bottom, right) which is the documented tie-break order.
struct BoundingBox {
    std::uint32_t top = 0;
    std::uint32_t left = 0;
    std::uint32_t bottom = 0;
    std::uint32_t right = 0;

    std::uint64_t area() const {
        return std::uint64_t(bottom - top + 1) * std::uint64_t(right - left + 1);
    }
    auto operator<=>(const BoundingBox&) const = default;
};

struct CropConfig {
    double tau = 0.3;
};

// Number of distinct axis-aligned boxes on an m x n grid:
// m*n*(m+1)*(n+1)/4, computed as the product of two triangular numbers.
std::uint64_t num_bboxes(std::uint32_t m, std::uint32_t n);

// Summed-area table giving O(1) inclusive box sums.
class IntegralImage {
  public:
    explicit IntegralImage(const AttentionMap& map);

    double box_sum(std::uint32_t top, std::uint32_t left, std::uint32_t bottom,
                   std::uint32_t right) const {
        const std::size_t w = cols_ + 1;
        return table_[(bottom + 1) * w + (right + 1)] - table_[top * w + (right + 1)] -
               table_[(bottom + 1) * w + left] + table_[top * w + left];
    }
    double total() const { return table_.back(); }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }

  private:
    std::uint32_t rows_;
    std::uint32_t cols_;
    std::vector<double> table_;  // (rows+1) x (cols+1), zero border
};

// Smallest-area box whose mass is >= tau * total mass; ties broken
// lexicographically on (top, left, bottom, right). The comparison is an
// exact >= on the two computed double sums, no epsilon. Throws ZeroMass if
// the map has no positive mass, ConfigError if tau is outside (0, 1].
BoundingBox min_enclosing_box(const AttentionMap& map, const CropConfig& config = {});

}  // namespace biasminer
