#ifndef PRIVPOINTS_POINTSET_HPP
#define PRIVPOINTS_POINTSET_HPP

#include <cstddef>
#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/rng.hpp"

namespace privpoints {

// Synthetic dataset generators used by the benchmarks, the error tables and
// the CLI `synth` subcommand. 1D generators return values in [0,1]; 2D
// generators return points inside the given domain.

/// n copies of the same value (default 0.5).
std::vector<double> repeating_value_data(std::size_t n, double value = 0.5);

/// n equally spaced values 0, 1/(n-1), ..., 1. n = 1 gives {0.5}.
std::vector<double> equally_spaced_data(std::size_t n);

/// n i.i.d. uniform values in [0,1].
std::vector<double> uniform_data(std::size_t n, Rng& rng);

/// n exponential-shaped values, sorted and rescaled so the largest is 1.
std::vector<double> exponential_data(std::size_t n, Rng& rng);

/// n points drawn from `clusters` Gaussian blobs with the given relative
/// spread (fraction of the domain diagonal), rejection-sampled into the
/// domain. Cluster centers are drawn uniformly inside the central 80% of
/// the domain so the blobs mostly fit.
PointSet2D clustered_points(std::size_t n, std::size_t clusters, double spread,
                            const Rect& domain, Rng& rng);

/// n points uniform in the domain.
PointSet2D uniform_points(std::size_t n, const Rect& domain, Rng& rng);

/// The 129-point median benchmark: 63 ones plus 66 exponential draws
/// rescaled into [0,1]. Returned sorted.
std::vector<double> median_benchmark_data(Rng& rng);

/// Same shape, but constructed so the local sensitivity of the median is
/// exactly `ls`: the two values at and below the median sit at 1-ls and the
/// value above it at 1. Returned sorted.
std::vector<double> median_data_with_local_sensitivity(double ls, Rng& rng);

}  // namespace privpoints

#endif  // PRIVPOINTS_POINTSET_HPP
