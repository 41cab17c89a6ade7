#ifndef PRIVPOINTS_HILBERT_HPP
#define PRIVPOINTS_HILBERT_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "privpoints/geometry.hpp"

namespace privpoints {

/// Parameters of the 2D -> 1D space-filling map: a Hilbert curve of the
/// given order over a rectangular domain. Order p induces a 2^p x 2^p cell
/// grid; points are snapped to cells and a cell maps to the midpoint of its
/// curve segment, so mapped values lie in (0,1).
struct HilbertConfig {
    int order = 10;
    Rect domain{0.0, 0.0, 1.0, 1.0};

    void validate() const;  // throws std::invalid_argument

    std::uint64_t side() const { return std::uint64_t{1} << order; }
    std::uint64_t cells() const { return std::uint64_t{1} << (2 * order); }
};

/// Curve index of grid cell (x, y), 0 <= x, y < 2^order.
/// Orientation: at order 1 the curve visits (0,0), (0,1), (1,1), (1,0).
std::uint64_t hilbert_xy_to_index(int order, std::uint64_t x, std::uint64_t y);

/// Grid cell visited at `index` along the curve. Inverse of hilbert_xy_to_index.
std::pair<std::uint64_t, std::uint64_t> hilbert_index_to_xy(int order,
                                                            std::uint64_t index);

/// Grid cell containing `pt` (domain-boundary points snap inward).
/// Throws std::invalid_argument if pt lies outside the domain.
std::pair<std::uint64_t, std::uint64_t> cell_of(const HilbertConfig& cfg, Point2D pt);

/// Map a domain point to its 1D curve position in (0,1):
/// (cell index + 0.5) / 4^order.
double hilbert_forward(const HilbertConfig& cfg, Point2D pt);

/// Map a curve position in [0,1) back to the center of its grid cell,
/// in domain coordinates.
Point2D hilbert_inverse(const HilbertConfig& cfg, double value);

/// Forward-map every point. Order of outputs matches order of inputs;
/// no sorting or dedup happens here.
std::vector<double> map_dataset(const HilbertConfig& cfg, const PointSet2D& points);

/// Inverse-map every value.
PointSet2D inverse_map(const HilbertConfig& cfg, const std::vector<double>& values);

}  // namespace privpoints

#endif  // PRIVPOINTS_HILBERT_HPP
