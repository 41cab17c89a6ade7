#ifndef PRIVPOINTS_ESTIMATORS_HPP
#define PRIVPOINTS_ESTIMATORS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/hilbert.hpp"
#include "privpoints/mechanism.hpp"
#include "privpoints/rng.hpp"

namespace privpoints {

/// Piecewise-constant pdf over [0,1]. breakpoints has one more entry than
/// densities and runs from 0 to 1; densities[i] applies on
/// [breakpoints[i], breakpoints[i+1]). Integrates to exactly 1.
struct DensityEstimate {
    std::vector<double> breakpoints;
    std::vector<double> densities;

    void validate() const;

    /// Cumulative mass on [0, x], piecewise linear; cdf(0) = 0, cdf(1) = 1.
    double cdf(double x) const;

private:
    friend DensityEstimate density_from_values(const std::vector<double>& values);
    std::vector<double> cum_;  // cumulative mass at each breakpoint
};

/// Variable-bandwidth density estimate from a multiset of unit-interval
/// values: the 1D Voronoi cells of the distinct values are the bins
/// (boundaries at midpoints between neighboring distinct values), and each
/// bin's density is its multiplicity over n times the bin width.
DensityEstimate density_from_values(const std::vector<double>& values);

/// Expected number of points in an axis-aligned query rectangle, from the
/// reconstructed 1D values of a release: accumulate density mass over the
/// curve interval of every grid cell intersecting the query, weighted by the
/// intersected area fraction, then scale by n. The full-domain query returns
/// n exactly.
double range_count(const std::vector<double>& values1d, const Rect& query,
                   const HilbertConfig& cfg, std::size_t n);

/// Same, against a prebuilt density (saves rebuilding it per query).
double range_count(const DensityEstimate& density, const Rect& query,
                   const HilbertConfig& cfg, std::size_t n);

/// Median of a release's reconstruction: the lower-middle element of the
/// sorted reconstructed values, as a curve position and as a 2D point.
std::pair<double, Point2D> median_from_release(const Release& release);

/// Lower-middle median of a plain value multiset.
double lower_median(std::vector<double> values);

/// Visualization-only: spread each group of coincident points uniformly over
/// a disc whose radius is half the distance to the nearest distinct
/// neighbor, capped at one grid cell. Distinct points are left untouched;
/// the multiset size is preserved.
PointSet2D diffuse_for_viz(const PointSet2D& points, const HilbertConfig& cfg,
                           Rng& rng);

}  // namespace privpoints

#endif  // PRIVPOINTS_ESTIMATORS_HPP
