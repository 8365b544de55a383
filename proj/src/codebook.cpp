#include "biasminer/codebook.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "biasminer/parallel.hpp"

namespace biasminer {

namespace {

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void check_uniform_dimension(const std::vector<FeatureVector>& features) {
    if (features.empty()) return;
    const std::size_t d = features.front().size();
    for (const auto& f : features) {
        if (f.size() != d)
            throw DimensionMismatch("feature vectors have mixed dimensions (" +
                                    std::to_string(f.size()) + " vs " + std::to_string(d) + ")");
        for (double v : f)
            if (!std::isfinite(v)) throw DataError("feature vector entries must be finite");
    }
}

FeatureVector l2_normalize(FeatureVector v) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (norm2 > 0.0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& x : v) x *= inv;
    }
    return v;
}

// k-means++ seeding. Single-threaded on purpose: the sequential prefix-sum
// walk is what makes the choice deterministic.
std::vector<FeatureVector> kmeanspp_init(const std::vector<FeatureVector>& points,
                                         std::uint32_t k, std::mt19937_64& rng) {
    const std::size_t n = points.size();
    auto uniform01 = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

    std::vector<FeatureVector> centroids;
    centroids.reserve(k);
    const std::size_t first = std::size_t(uniform01() * double(n)) % n;
    centroids.push_back(points[first]);

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i], centroids[0]);

    std::vector<bool> chosen(n, false);
    chosen[first] = true;

    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : d2) total += d;
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = uniform01() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += d2[i];
                if (r < cum) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {  // r landed on the last positive-weight sliver
                for (std::size_t i = n; i-- > 0;)
                    if (d2[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        }
        if (pick == n) {
            // All remaining distances are zero (duplicate-heavy input):
            // take the first unchosen point so k centroids always exist.
            for (std::size_t i = 0; i < n; ++i)
                if (!chosen[i]) {
                    pick = i;
                    break;
                }
            if (pick == n) pick = 0;
        }
        chosen[pick] = true;
        centroids.push_back(points[pick]);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], squared_distance(points[i], centroids.back()));
    }
    return centroids;
}

std::uint32_t nearest_centroid(const std::vector<FeatureVector>& centroids,
                               const FeatureVector& point, double* dist2_out = nullptr) {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.size(); ++j) {
        const double d = squared_distance(centroids[j], point);
        if (d < best_d) {
            best_d = d;
            best = static_cast<std::uint32_t>(j);
        }
    }
    if (dist2_out) *dist2_out = best_d;
    return best;
}

}  // namespace

Codebook train_codebook(const std::vector<FeatureVector>& features, const CodebookConfig& config,
                        TrainStats* stats) {
    if (config.k == 0) throw ConfigError("k must be >= 1");
    if (features.size() < config.k)
        throw InsufficientData("need at least k=" + std::to_string(config.k) +
                               " feature vectors, got " + std::to_string(features.size()));
    check_uniform_dimension(features);
    if (features.front().empty()) throw DimensionMismatch("feature dimension must be >= 1");
    if (config.tolerance < 0.0) throw ConfigError("tolerance must be >= 0");
    if (config.max_iterations == 0) throw ConfigError("max_iterations must be >= 1");

    std::vector<FeatureVector> points;
    if (config.l2_normalize) {
        points.reserve(features.size());
        for (const auto& f : features) points.push_back(l2_normalize(f));
    }
    const std::vector<FeatureVector>& data = config.l2_normalize ? points : features;

    const std::size_t n = data.size();
    const std::size_t dim = data.front().size();
    std::mt19937_64 rng(config.seed);
    std::vector<FeatureVector> centroids = kmeanspp_init(data, config.k, rng);

    if (stats) *stats = TrainStats{};
    std::vector<std::uint32_t> assignment(n, 0);
    std::vector<double> dist2(n, 0.0);
    double prev_inertia = std::numeric_limits<double>::infinity();

    for (std::uint32_t iter = 0; iter < config.max_iterations; ++iter) {
        parallel_for(n, config.threads, [&](std::size_t i) {
            assignment[i] = nearest_centroid(centroids, data[i], &dist2[i]);
        });
        // Sequential reduction in point order keeps the sum independent of
        // the thread count above.
        double cur_inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) cur_inertia += dist2[i];
        if (stats) stats->inertia_per_iteration.push_back(cur_inertia);

        if (prev_inertia < std::numeric_limits<double>::infinity()) {
            const double improvement =
                prev_inertia > 0.0 ? (prev_inertia - cur_inertia) / prev_inertia
                                   : (cur_inertia > 0.0 ? 1.0 : 0.0);
            if (improvement < config.tolerance) {
                if (stats) stats->converged = true;
                break;
            }
        }
        prev_inertia = cur_inertia;

        std::vector<FeatureVector> sums(config.k, FeatureVector(dim, 0.0));
        std::vector<std::size_t> counts(config.k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint32_t a = assignment[i];
            ++counts[a];
            for (std::size_t d = 0; d < dim; ++d) sums[a][d] += data[i][d];
        }
        for (std::uint32_t j = 0; j < config.k; ++j) {
            if (counts[j] == 0) continue;
            for (std::size_t d = 0; d < dim; ++d) centroids[j][d] = sums[j][d] / double(counts[j]);
        }
        // Reseed empty clusters to the point farthest from its assigned
        // centroid; ties on distance go to the lowest point index.
        for (std::uint32_t j = 0; j < config.k; ++j) {
            if (counts[j] != 0) continue;
            std::size_t farthest = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assignment[i]] <= 1) continue;  // don't drain a singleton donor
                if (dist2[i] > far_d) {
                    far_d = dist2[i];
                    farthest = i;
                }
            }
            centroids[j] = data[farthest];
            --counts[assignment[farthest]];
            assignment[farthest] = j;
            counts[j] = 1;
        }
    }

    Codebook cb{std::move(centroids), config.l2_normalize};
    return cb;
}

std::uint32_t assign_codeword(const Codebook& codebook, const FeatureVector& feature) {
    if (codebook.k() == 0) throw ConfigError("codebook is empty");
    if (feature.size() != codebook.dim())
        throw DimensionMismatch("feature dimension " + std::to_string(feature.size()) +
                                " does not match codebook dimension " +
                                std::to_string(codebook.dim()));
    if (codebook.l2_normalized) return nearest_centroid(codebook.centroids, l2_normalize(feature));
    return nearest_centroid(codebook.centroids, feature);
}

double inertia(const Codebook& codebook, const std::vector<FeatureVector>& features) {
    check_uniform_dimension(features);
    double total = 0.0;
    for (const auto& f : features) {
        if (f.size() != codebook.dim())
            throw DimensionMismatch("feature dimension " + std::to_string(f.size()) +
                                    " does not match codebook dimension " +
                                    std::to_string(codebook.dim()));
        double d = 0.0;
        if (codebook.l2_normalized)
            nearest_centroid(codebook.centroids, l2_normalize(f), &d);
        else
            nearest_centroid(codebook.centroids, f, &d);
        total += d;
    }
    return total;
}

// ---- persistence -----------------------------------------------------------

namespace {

constexpr const char* kCodebookMagic = "# biasminer codebook 1";

std::string format_real(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void save_codebook(const Codebook& codebook, std::ostream& out) {
    out << kCodebookMagic << '\n';
    out << "k " << codebook.k() << '\n';
    out << "d " << codebook.dim() << '\n';
    out << "normalized " << (codebook.l2_normalized ? 1 : 0) << '\n';
    for (const auto& row : codebook.centroids) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ' ';
            out << format_real(row[i]);
        }
        out << '\n';
    }
}

void save_codebook(const Codebook& codebook, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    save_codebook(codebook, out);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Codebook load_codebook(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCodebookMagic)
        throw MalformedDatabase(std::string("bad codebook header, expected '") + kCodebookMagic +
                                "'");
    auto read_field = [&in](const char* key) -> std::uint64_t {
        std::string l;
        if (!std::getline(in, l)) throw MalformedDatabase("truncated codebook file");
        std::istringstream ss(l);
        std::string word;
        std::uint64_t value = 0;
        if (!(ss >> word >> value) || word != key)
            throw MalformedDatabase("expected '" + std::string(key) + " <value>', got '" + l + "'");
        return value;
    };
    const std::uint64_t k = read_field("k");
    const std::uint64_t d = read_field("d");
    const std::uint64_t normalized = read_field("normalized");
    if (k == 0 || d == 0) throw MalformedDatabase("codebook must have k >= 1 and d >= 1");

    Codebook cb;
    cb.l2_normalized = normalized != 0;
    cb.centroids.reserve(k);
    for (std::uint64_t j = 0; j < k; ++j) {
        if (!std::getline(in, line)) throw MalformedDatabase("truncated codebook file");
        std::istringstream ss(line);
        FeatureVector row;
        row.reserve(d);
        double v = 0.0;
        while (ss >> v) row.push_back(v);
        if (row.size() != d || !ss.eof())
            throw MalformedDatabase("bad centroid row " + std::to_string(j));
        for (double x : row)
            if (!std::isfinite(x)) throw MalformedDatabase("centroid entries must be finite");
        cb.centroids.push_back(std::move(row));
    }
    return cb;
}

Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return load_codebook(in);
}

}  // namespace biasminer
