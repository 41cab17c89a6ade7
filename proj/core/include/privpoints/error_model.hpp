#ifndef PRIVPOINTS_ERROR_MODEL_HPP
#define PRIVPOINTS_ERROR_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/hilbert.hpp"

namespace privpoints {

// ---------------------------------------------------------------------------
// Down/up-sampling and distances

/// Means of consecutive k-blocks; a short final block is averaged over its
/// actual size.
std::vector<double> downsample(const std::vector<double>& seq, std::size_t k);

/// Expand block values back to length n, repeating each over its k-block
/// (the final block covers the remaining fewer-than-k slots).
std::vector<double> upsample(const std::vector<double>& blocks, std::size_t k,
                             std::size_t n);

/// Normalized cost of representing each k-block of a sorted sequence by its
/// mean: (1/n) * L1(seq, upsample(downsample(seq, k))). Always <= k/(2n),
/// and around k/(4n) for smooth data.
double gen_error(const std::vector<double>& sorted_seq, std::size_t k);

/// Earth mover's distance between equal-size multisets of reals: the L1
/// distance of their sorted sequences, which equals the min-cost bipartite
/// matching under |.| cost. Not normalized.
double emd_1d(std::vector<double> a, std::vector<double> b);

/// EMD between equal-size 2D pointsets, approximated along the curve:
/// emd_1d of the forward-mapped values.
double emd_sfc(const PointSet2D& p, const PointSet2D& q, const HilbertConfig& cfg);

// ---------------------------------------------------------------------------
// Dataset families

enum class FamilyKind { RepeatingSingleValue, EquallySpaced, FromFile };

std::string family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);  // throws on unknown

/// A named source of 1D datasets in [0,1] for error curves. FromFile reads a
/// values file; when asked for fewer points than the file holds it takes
/// evenly strided order statistics, so the shape of the distribution is kept.
struct DatasetFamily {
    FamilyKind kind = FamilyKind::RepeatingSingleValue;
    std::string path;  // only used by FromFile

    std::vector<double> generate(std::size_t n) const;
};

// ---------------------------------------------------------------------------
// Monte-Carlo error estimation

struct MonteCarloStat {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

/// Expected normalized error of the ungrouped (k = 1) pipeline on a concrete
/// dataset: mean over `trials` draws of (1/n) * emd_1d(D, IR(sort(D) + noise))
/// with i.i.d. Laplace(1/epsilon) noise. The isotonic fit is used unclamped
/// here, matching the error definition. Deterministic given `seed`.
MonteCarloStat estimate_err1_stat(std::vector<double> values, double epsilon,
                                  std::size_t trials, std::uint64_t seed);

/// estimate_err1_stat's mean on `n` points generated from a family.
double estimate_err1(const DatasetFamily& family, std::size_t n, double epsilon,
                     std::size_t trials, std::uint64_t seed);

/// Expected normalized error of the grouped pipeline (group size k) on a
/// concrete dataset, measured end to end: noisy k-sums, isotonic fit of the
/// means, upsample, EMD against the input.
MonteCarloStat estimate_err_grouped_stat(std::vector<double> values, double epsilon,
                                         std::size_t k, std::size_t trials,
                                         std::uint64_t seed);

// ---------------------------------------------------------------------------
// Error table and group-size selection

/// Grid of expected normalized k=1 errors over (n, epsilon) for one dataset
/// family, with the metadata needed to rebuild it. Lookup interpolates
/// log-log-linearly in n and rescales across epsilon by the 1/epsilon law;
/// queries outside the grid are clamped to the nearest cell.
struct ErrorTable {
    DatasetFamily family;
    std::vector<std::size_t> n_grid;   // ascending
    std::vector<double> eps_grid;      // ascending
    std::vector<std::vector<double>> err1;  // err1[eps_index][n_index]
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    void validate() const;  // shape and positivity; throws std::invalid_argument

    /// Interpolated Err1 at real-valued n and epsilon. If `clamped` is given
    /// it reports whether n fell outside the grid.
    double lookup_err1(double n, double epsilon, bool* clamped = nullptr) const;
};

ErrorTable build_error_table(const DatasetFamily& family,
                             std::vector<std::size_t> n_grid,
                             std::vector<double> eps_grid, std::size_t trials,
                             std::uint64_t seed);

inline constexpr std::uint64_t kDefaultTableSeed = 1000003;

/// The table used for automatic group-size selection: RepeatingSingleValue
/// at epsilon = 1 on powers of two from 2 to 65536.
ErrorTable default_error_table(std::size_t trials = 500,
                               std::uint64_t seed = kDefaultTableSeed);

/// Predicted expected normalized error of publishing n points with group
/// size k at a given epsilon: k/(4n) average generalization error plus the
/// table's Err1 at (n/k, k*epsilon), the noise-equivalence of grouping.
double predict_err(std::size_t n, double epsilon, std::size_t k,
                   const ErrorTable& table);

/// Group size minimizing predict_err, swept over {1..100} plus a 5%-spaced
/// log grid up to n/2. Ties go to the smallest k.
std::size_t choose_group_size(std::size_t n, double epsilon, const ErrorTable& table);

/// Table serialization (JSON document with grids, values, family, seed, trials).
void save_error_table(const ErrorTable& table, const std::string& path);
ErrorTable load_error_table(const std::string& path);
std::string error_table_to_json(const ErrorTable& table);
ErrorTable error_table_from_json(const std::string& text);

}  // namespace privpoints

#endif  // PRIVPOINTS_ERROR_MODEL_HPP
