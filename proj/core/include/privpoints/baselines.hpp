#ifndef PRIVPOINTS_BASELINES_HPP
#define PRIVPOINTS_BASELINES_HPP

#include <cstddef>
#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/rng.hpp"

namespace privpoints {

// Three comparison mechanisms. All operate under the replacement
// neighborhood (one element substituted, sizes equal), under which the total
// count n is public, so full-cover range queries are answered with n exactly.

/// Equi-width b x b histogram with Laplace(2/epsilon) noise per bin
/// (moving one point changes two bins by 1 each: sensitivity 2).
/// counts is row-major with x fastest: counts[iy * bins_per_axis + ix].
struct NoisyHistogram2D {
    std::size_t bins_per_axis = 1;
    std::vector<double> counts;
    double epsilon = 1.0;
    Rect domain;
    std::size_t point_count = 0;

    void validate() const;
};

NoisyHistogram2D equiwidth_publish(const PointSet2D& points, std::size_t bins_per_axis,
                                   double epsilon, const Rect& domain, Rng& rng,
                                   bool add_noise = true);

/// Expected count in a query rectangle: fractional bin overlap times noisy
/// count, summed; full-cover queries return the public n.
double equiwidth_range_count(const NoisyHistogram2D& hist, const Rect& query);

/// 2D Haar wavelet transform (averaging convention) of a 2^q x 2^q
/// histogram, with Laplace(2(q+1)/epsilon) noise on every detail coefficient
/// and the DC (overall mean) slot pinned to the exact n / 4^q.
/// coeffs is row-major like NoisyHistogram2D.counts.
struct NoisyWaveletTransform {
    std::size_t levels = 1;  // q; side is 2^q
    std::vector<double> coeffs;
    double epsilon = 1.0;
    Rect domain;
    std::size_t point_count = 0;

    std::size_t side() const { return std::size_t{1} << levels; }
    void validate() const;
};

NoisyWaveletTransform wavelet_publish(const PointSet2D& points, std::size_t levels,
                                      double epsilon, const Rect& domain, Rng& rng,
                                      bool add_noise = true);

/// One-shot range count from a noisy transform; inverts the transform on
/// every call, so use WaveletCounter for query batches.
double wavelet_range_count(const NoisyWaveletTransform& wt, const Rect& query);

/// Caches the inverse transform and its prefix sums; answers each range
/// query in O(1) with fractional boundary bins.
class WaveletCounter {
public:
    explicit WaveletCounter(const NoisyWaveletTransform& wt);
    double count(const Rect& query) const;

private:
    std::size_t side_;
    Rect domain_;
    std::size_t n_;
    std::vector<double> prefix_;  // (side+1)^2, row-major
};

/// In-place 2D Haar transform of a 2^q-sided grid, averaging convention:
/// each 2x2 block {a b; c d} becomes mean (a+b+c+d)/4 plus horizontal,
/// vertical and diagonal differences-of-means, recursing on the means.
/// grid is row-major; inverse undoes it exactly (up to rounding).
void haar2d_forward(std::vector<double>& grid, std::size_t levels);
void haar2d_inverse(std::vector<double>& grid, std::size_t levels);

/// Noisy median calibrated to smooth sensitivity: S = max over t >= 0 of
/// exp(-epsilon t) * LS_t, where LS_t is the largest change of the median
/// achievable by replacing t+1 elements (indices clamped to the unit
/// interval's endpoints); the published value is median + Laplace(2S/epsilon).
struct SmoothSensitivityResult {
    double smooth_sensitivity = 0.0;
    double noisy_median = 0.0;
    double epsilon = 1.0;
};

/// values must be sorted, inside [0,1], with n >= 3.
SmoothSensitivityResult smooth_sensitivity_median(const std::vector<double>& values,
                                                  double epsilon, Rng& rng,
                                                  bool add_noise = true);

/// The smooth sensitivity alone (no noise draw); same preconditions.
double smooth_sensitivity_of_median(const std::vector<double>& values, double epsilon);

/// Local sensitivity of the median at distance 0: the larger of the gaps to
/// the median's neighbors.
double local_sensitivity_median(const std::vector<double>& values);

}  // namespace privpoints

#endif  // PRIVPOINTS_BASELINES_HPP
