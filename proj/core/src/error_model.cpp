#include "privpoints/error_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "privpoints/io.hpp"
#include "privpoints/isotonic.hpp"
#include "privpoints/mechanism.hpp"
#include "privpoints/noise.hpp"
#include "privpoints/pointset.hpp"
#include "privpoints/rng.hpp"
#include "privpoints/version.hpp"

namespace privpoints {

std::vector<double> downsample(const std::vector<double>& seq, std::size_t k) {
    if (k < 1) throw std::invalid_argument("downsample: k must be >= 1");
    if (seq.empty()) throw std::invalid_argument("downsample: empty input");
    const std::size_t n = seq.size();
    const std::size_t m = (n + k - 1) / k;
    std::vector<double> out(m);
    for (std::size_t b = 0; b < m; ++b) {
        const std::size_t lo = b * k;
        const std::size_t hi = std::min(lo + k, n);
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += seq[i];
        out[b] = acc / static_cast<double>(hi - lo);
    }
    return out;
}

std::vector<double> upsample(const std::vector<double>& blocks, std::size_t k,
                             std::size_t n) {
    if (k < 1) throw std::invalid_argument("upsample: k must be >= 1");
    if (n < 1) throw std::invalid_argument("upsample: n must be >= 1");
    if (blocks.size() != (n + k - 1) / k) {
        throw std::invalid_argument("upsample: block count does not match n and k");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = blocks[i / k];
    return out;
}

double gen_error(const std::vector<double>& sorted_seq, std::size_t k) {
    const std::size_t n = sorted_seq.size();
    const std::vector<double> blocks = downsample(sorted_seq, k);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::fabs(sorted_seq[i] - blocks[i / k]);
    }
    return acc / static_cast<double>(n);
}

double emd_1d(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("emd_1d: multisets must have equal size");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

double emd_sfc(const PointSet2D& p, const PointSet2D& q, const HilbertConfig& cfg) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("emd_sfc: pointsets must have equal size");
    }
    return emd_1d(map_dataset(cfg, p), map_dataset(cfg, q));
}

// ---------------------------------------------------------------------------

std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::RepeatingSingleValue: return "repeating-single-value";
        case FamilyKind::EquallySpaced: return "equally-spaced";
        case FamilyKind::FromFile: return "file";
    }
    throw std::logic_error("family_name: unknown kind");
}

FamilyKind family_from_name(const std::string& name) {
    if (name == "repeating-single-value" || name == "repeating" || name == "repeat") {
        return FamilyKind::RepeatingSingleValue;
    }
    if (name == "equally-spaced" || name == "spaced") return FamilyKind::EquallySpaced;
    if (name == "file" || name == "from-file") return FamilyKind::FromFile;
    throw std::invalid_argument("unknown dataset family: " + name);
}

namespace {

std::vector<double> load_unit_values(const std::string& path) {
    std::vector<double> out = load_values(path);
    if (out.empty()) throw std::runtime_error("no values in file: " + path);
    for (double v : out) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::runtime_error("value outside [0,1] in file: " + path);
        }
    }
    return out;
}

}  // namespace

std::vector<double> DatasetFamily::generate(std::size_t n) const {
    if (n < 1) throw std::invalid_argument("DatasetFamily: n must be >= 1");
    switch (kind) {
        case FamilyKind::RepeatingSingleValue: return repeating_value_data(n);
        case FamilyKind::EquallySpaced: return equally_spaced_data(n);
        case FamilyKind::FromFile: {
            std::vector<double> values = load_unit_values(path);
            std::sort(values.begin(), values.end());
            if (n > values.size()) {
                throw std::invalid_argument(
                    "DatasetFamily: file holds fewer values than requested");
            }
            if (n == values.size()) return values;
            // evenly strided order statistics keep the distribution shape
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t idx = ((2 * i + 1) * values.size()) / (2 * n);
                out[i] = values[std::min(idx, values.size() - 1)];
            }
            return out;
        }
    }
    throw std::logic_error("DatasetFamily: unknown kind");
}

// ---------------------------------------------------------------------------

namespace {

struct Welford {
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t count = 0;

    void add(double x) {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }
    double std_error() const {
        if (count < 2) return 0.0;
        const double var = m2 / static_cast<double>(count - 1);
        return std::sqrt(var / static_cast<double>(count));
    }
};

}  // namespace

MonteCarloStat estimate_err1_stat(std::vector<double> values, double epsilon,
                                  std::size_t trials, std::uint64_t seed) {
    if (values.empty()) throw std::invalid_argument("estimate_err1: empty dataset");
    if (!(epsilon > 0.0)) throw std::invalid_argument("estimate_err1: epsilon must be > 0");
    if (trials < 1) throw std::invalid_argument("estimate_err1: trials must be >= 1");
    std::sort(values.begin(), values.end());

    const std::size_t n = values.size();
    const double scale = 1.0 / epsilon;
    std::vector<double> noisy(n);
    Welford stat;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, t);
        for (std::size_t i = 0; i < n; ++i) {
            noisy[i] = values[i] + laplace_sample(scale, rng);
        }
        const std::vector<double> fit = isotonic_l2(noisy).values;
        double acc = 0.0;
        // both sequences are nondecreasing, so the aligned L1 is their EMD
        for (std::size_t i = 0; i < n; ++i) acc += std::fabs(values[i] - fit[i]);
        stat.add(acc / static_cast<double>(n));
    }
    return {stat.mean, stat.std_error(), trials};
}

double estimate_err1(const DatasetFamily& family, std::size_t n, double epsilon,
                     std::size_t trials, std::uint64_t seed) {
    return estimate_err1_stat(family.generate(n), epsilon, trials, seed).mean;
}

MonteCarloStat estimate_err_grouped_stat(std::vector<double> values, double epsilon,
                                         std::size_t k, std::size_t trials,
                                         std::uint64_t seed) {
    if (values.empty()) throw std::invalid_argument("estimate_err: empty dataset");
    if (!(epsilon > 0.0)) throw std::invalid_argument("estimate_err: epsilon must be > 0");
    if (trials < 1) throw std::invalid_argument("estimate_err: trials must be >= 1");
    std::sort(values.begin(), values.end());

    const std::size_t n = values.size();
    auto [sums, partition] = group_sums(values, k);
    const std::size_t m = sums.size();
    const double scale = 1.0 / epsilon;

    std::vector<double> noisy_means(m);
    Welford stat;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng = Rng::substream(seed, t);
        for (std::size_t b = 0; b < m; ++b) {
            noisy_means[b] = (sums[b] + laplace_sample(scale, rng)) /
                             static_cast<double>(partition.sizes[b]);
        }
        const std::vector<double> fit = isotonic_l2(noisy_means).values;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::fabs(values[i] - fit[i / k]);
        stat.add(acc / static_cast<double>(n));
    }
    return {stat.mean, stat.std_error(), trials};
}

// ---------------------------------------------------------------------------

void ErrorTable::validate() const {
    if (n_grid.empty() || eps_grid.empty()) {
        throw std::invalid_argument("ErrorTable: empty grid");
    }
    if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
        std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end()) {
        throw std::invalid_argument("ErrorTable: n grid must be strictly ascending");
    }
    if (!std::is_sorted(eps_grid.begin(), eps_grid.end())) {
        throw std::invalid_argument("ErrorTable: eps grid must be ascending");
    }
    for (double e : eps_grid) {
        if (!(e > 0.0)) throw std::invalid_argument("ErrorTable: eps must be > 0");
    }
    if (err1.size() != eps_grid.size()) {
        throw std::invalid_argument("ErrorTable: row count mismatch");
    }
    for (const auto& row : err1) {
        if (row.size() != n_grid.size()) {
            throw std::invalid_argument("ErrorTable: column count mismatch");
        }
        for (double v : row) {
            if (!(v > 0.0)) throw std::invalid_argument("ErrorTable: errors must be > 0");
        }
    }
    if (trials < 1) throw std::invalid_argument("ErrorTable: trials must be >= 1");
}

double ErrorTable::lookup_err1(double n, double epsilon, bool* clamped) const {
    if (!(n > 0.0)) throw std::invalid_argument("lookup_err1: n must be > 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("lookup_err1: epsilon must be > 0");

    // nearest epsilon row in log space, rescaled by the 1/epsilon law
    std::size_t row = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < eps_grid.size(); ++r) {
        const double d = std::fabs(std::log(eps_grid[r]) - std::log(epsilon));
        if (d < best) {
            best = d;
            row = r;
        }
    }
    const double factor = eps_grid[row] / epsilon;
    const std::vector<double>& curve = err1[row];

    const double lo = static_cast<double>(n_grid.front());
    const double hi = static_cast<double>(n_grid.back());
    if (clamped) *clamped = (n < lo || n > hi);
    if (n <= lo) return curve.front() * factor;
    if (n >= hi) return curve.back() * factor;

    const auto upper = std::lower_bound(n_grid.begin(), n_grid.end(),
                                        static_cast<std::size_t>(std::ceil(n)));
    std::size_t j = static_cast<std::size_t>(upper - n_grid.begin());
    if (static_cast<double>(n_grid[j]) < n) ++j;  // ceil() can round within a cell
    if (static_cast<double>(n_grid[j]) == n) return curve[j] * factor;
    const std::size_t i = j - 1;

    const double x0 = std::log(static_cast<double>(n_grid[i]));
    const double x1 = std::log(static_cast<double>(n_grid[j]));
    const double y0 = std::log(curve[i]);
    const double y1 = std::log(curve[j]);
    const double t = (std::log(n) - x0) / (x1 - x0);
    return std::exp(y0 + t * (y1 - y0)) * factor;
}

ErrorTable build_error_table(const DatasetFamily& family,
                             std::vector<std::size_t> n_grid,
                             std::vector<double> eps_grid, std::size_t trials,
                             std::uint64_t seed) {
    ErrorTable table;
    table.family = family;
    table.n_grid = std::move(n_grid);
    table.eps_grid = std::move(eps_grid);
    table.trials = trials;
    table.seed = seed;
    table.err1.assign(table.eps_grid.size(), {});
    for (std::size_t r = 0; r < table.eps_grid.size(); ++r) {
        table.err1[r].resize(table.n_grid.size());
        for (std::size_t c = 0; c < table.n_grid.size(); ++c) {
            const std::uint64_t cell_seed =
                derive_seed(seed, r * table.n_grid.size() + c);
            table.err1[r][c] = estimate_err1_stat(family.generate(table.n_grid[c]),
                                                  table.eps_grid[r], trials, cell_seed)
                                   .mean;
        }
    }
    table.validate();
    return table;
}

ErrorTable default_error_table(std::size_t trials, std::uint64_t seed) {
    std::vector<std::size_t> n_grid;
    for (std::size_t n = 2; n <= 65536; n *= 2) n_grid.push_back(n);
    return build_error_table(DatasetFamily{FamilyKind::RepeatingSingleValue, {}},
                             std::move(n_grid), {1.0}, trials, seed);
}

double predict_err(std::size_t n, double epsilon, std::size_t k,
                   const ErrorTable& table) {
    if (n < 1) throw std::invalid_argument("predict_err: n must be >= 1");
    if (k < 1 || k > n) throw std::invalid_argument("predict_err: k must be in [1, n]");
    if (!(epsilon > 0.0)) throw std::invalid_argument("predict_err: epsilon must be > 0");
    const double gen = static_cast<double>(k) / (4.0 * static_cast<double>(n));
    return gen + table.lookup_err1(static_cast<double>(n) / static_cast<double>(k),
                                   static_cast<double>(k) * epsilon);
}

std::size_t choose_group_size(std::size_t n, double epsilon, const ErrorTable& table) {
    if (n < 2) throw std::invalid_argument("choose_group_size: n must be >= 2");
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("choose_group_size: epsilon must be > 0");
    }
    const std::size_t k_max = std::max<std::size_t>(1, n / 2);

    std::vector<std::size_t> candidates;
    for (std::size_t k = 1; k <= std::min<std::size_t>(100, k_max); ++k) {
        candidates.push_back(k);
    }
    double c = 100.0;
    while (true) {
        c = std::max(c + 1.0, c * 1.05);
        const auto k = static_cast<std::size_t>(c);
        if (k > k_max) break;
        candidates.push_back(k);
    }

    std::size_t best_k = candidates.front();
    double best_err = predict_err(n, epsilon, best_k, table);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double e = predict_err(n, epsilon, candidates[i], table);
        if (e < best_err) {
            best_err = e;
            best_k = candidates[i];
        }
    }
    return best_k;
}

// ---------------------------------------------------------------------------

std::string error_table_to_json(const ErrorTable& table) {
    table.validate();
    nlohmann::json doc;
    doc["kind"] = "error-table";
    doc["version"] = kVersion;
    doc["family"] = family_name(table.family.kind);
    if (table.family.kind == FamilyKind::FromFile) {
        doc["family_path"] = table.family.path;
    }
    doc["n_grid"] = table.n_grid;
    doc["eps_grid"] = table.eps_grid;
    doc["err1"] = table.err1;
    doc["trials"] = table.trials;
    doc["seed"] = table.seed;
    return doc.dump(2) + "\n";
}

ErrorTable error_table_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("error table: bad JSON: ") + e.what());
    }
    try {
        if (doc.at("kind").get<std::string>() != "error-table") {
            throw std::runtime_error("error table: wrong document kind");
        }
        ErrorTable table;
        table.family.kind = family_from_name(doc.at("family").get<std::string>());
        if (doc.contains("family_path")) {
            table.family.path = doc["family_path"].get<std::string>();
        }
        table.n_grid = doc.at("n_grid").get<std::vector<std::size_t>>();
        table.eps_grid = doc.at("eps_grid").get<std::vector<double>>();
        table.err1 = doc.at("err1").get<std::vector<std::vector<double>>>();
        table.trials = doc.at("trials").get<std::size_t>();
        table.seed = doc.at("seed").get<std::uint64_t>();
        table.validate();
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("error table: missing or bad field: ") +
                                 e.what());
    }
}

void save_error_table(const ErrorTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write error table: " + path);
    out << error_table_to_json(table);
    if (!out) throw std::runtime_error("write failed: " + path);
}

ErrorTable load_error_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open error table: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return error_table_from_json(buf.str());
}

}  // namespace privpoints
