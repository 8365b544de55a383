#include "biasminer/attention.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace biasminer {

AttentionMap::AttentionMap(std::uint32_t rows, std::uint32_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (rows_ == 0 || cols_ == 0) throw InvalidDimension("attention map dimensions must be >= 1");
    if (values_.size() != std::size_t(rows_) * cols_)
        throw InvalidDimension("attention map has " + std::to_string(values_.size()) +
                               " values, expected " + std::to_string(std::size_t(rows_) * cols_));
    for (double v : values_) {
        if (!std::isfinite(v) || v < 0.0)
            throw DataError("attention map entries must be finite and non-negative");
    }
}

AttentionMap AttentionMap::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidDimension("attention map dimensions must be >= 1");
    const std::size_t cols = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * cols);
    for (const auto& row : rows) {
        if (row.size() != cols) throw DataError("attention map rows have unequal lengths");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return AttentionMap(static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(cols),
                        std::move(flat));
}

std::uint64_t num_bboxes(std::uint32_t m, std::uint32_t n) {
    if (m == 0 || n == 0) throw InvalidDimension("grid dimensions must be >= 1");
    const std::uint64_t row_intervals = std::uint64_t(m) * (m + 1) / 2;
    const std::uint64_t col_intervals = std::uint64_t(n) * (n + 1) / 2;
    return row_intervals * col_intervals;
}

IntegralImage::IntegralImage(const AttentionMap& map)
    : rows_(map.rows()), cols_(map.cols()), table_((rows_ + 1) * std::size_t(cols_ + 1), 0.0) {
    const std::size_t w = cols_ + 1;
    for (std::uint32_t r = 0; r < rows_; ++r) {
        double row_sum = 0.0;
        for (std::uint32_t c = 0; c < cols_; ++c) {
            row_sum += map.at(r, c);
            table_[(r + 1) * w + (c + 1)] = table_[r * w + (c + 1)] + row_sum;
        }
    }
}

BoundingBox min_enclosing_box(const AttentionMap& map, const CropConfig& config) {
    if (!(config.tau > 0.0) || config.tau > 1.0)
        throw ConfigError("tau must be in (0, 1], got " + std::to_string(config.tau));

    const IntegralImage ii(map);
    const double total = ii.total();
    if (!(total > 0.0)) throw ZeroMass("attention map has zero total mass");
    const double needed = config.tau * total;

    const std::uint32_t m = map.rows(), n = map.cols();

    // Shapes grouped by area, areas visited in increasing order. Within one
    // shape the (top, left) scan meets boxes in lexicographic order, so the
    // first hit per shape is that shape's best; shapes of equal area are
    // reconciled by the full tuple compare.
    std::map<std::uint64_t, std::vector<std::pair<std::uint32_t, std::uint32_t>>> shapes_by_area;
    for (std::uint32_t h = 1; h <= m; ++h)
        for (std::uint32_t w = 1; w <= n; ++w)
            shapes_by_area[std::uint64_t(h) * w].emplace_back(h, w);

    for (const auto& [area, shapes] : shapes_by_area) {
        std::optional<BoundingBox> best;
        for (const auto& [h, w] : shapes) {
            for (std::uint32_t top = 0; top + h <= m; ++top) {
                bool found = false;
                for (std::uint32_t left = 0; left + w <= n; ++left) {
                    if (ii.box_sum(top, left, top + h - 1, left + w - 1) >= needed) {
                        BoundingBox box{top, left, top + h - 1, left + w - 1};
                        if (!best || box < *best) best = box;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
        }
        if (best) return *best;
    }
    // total > 0 guarantees the full grid satisfies any tau <= 1.
    return BoundingBox{0, 0, m - 1, n - 1};
}

}  // namespace biasminer
