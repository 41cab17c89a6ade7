#include "privpoints/hilbert.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace privpoints {

void HilbertConfig::validate() const {
    if (order < 1 || order > 31) {
        throw std::invalid_argument("HilbertConfig: order must be in [1, 31]");
    }
    domain.validate();
}

namespace {

// Reflect/rotate a quadrant so the four sub-curves stitch together.
void rotate_quadrant(std::uint64_t n, std::uint64_t& x, std::uint64_t& y,
                     std::uint64_t rx, std::uint64_t ry) {
    if (ry == 0) {
        if (rx == 1) {
            x = n - 1 - x;
            y = n - 1 - y;
        }
        std::swap(x, y);
    }
}

}  // namespace

std::uint64_t hilbert_xy_to_index(int order, std::uint64_t x, std::uint64_t y) {
    const std::uint64_t n = std::uint64_t{1} << order;
    std::uint64_t d = 0;
    for (std::uint64_t s = n >> 1; s > 0; s >>= 1) {
        std::uint64_t rx = (x & s) ? 1 : 0;
        std::uint64_t ry = (y & s) ? 1 : 0;
        d += s * s * ((3 * rx) ^ ry);
        rotate_quadrant(n, x, y, rx, ry);
    }
    return d;
}

std::pair<std::uint64_t, std::uint64_t> hilbert_index_to_xy(int order,
                                                            std::uint64_t index) {
    const std::uint64_t n = std::uint64_t{1} << order;
    std::uint64_t x = 0, y = 0, t = index;
    for (std::uint64_t s = 1; s < n; s <<= 1) {
        std::uint64_t rx = 1 & (t / 2);
        std::uint64_t ry = 1 & (t ^ rx);
        rotate_quadrant(s, x, y, rx, ry);
        x += s * rx;
        y += s * ry;
        t /= 4;
    }
    return {x, y};
}

std::pair<std::uint64_t, std::uint64_t> cell_of(const HilbertConfig& cfg, Point2D pt) {
    if (!cfg.domain.contains(pt)) {
        std::ostringstream msg;
        msg << "point (" << pt.x << ", " << pt.y << ") lies outside the domain ["
            << cfg.domain.min_x << ", " << cfg.domain.max_x << "] x ["
            << cfg.domain.min_y << ", " << cfg.domain.max_y << "]";
        throw std::invalid_argument(msg.str());
    }
    const UnitPoint2D u = to_unit(pt, cfg.domain);
    const std::uint64_t side = cfg.side();
    auto snap = [side](double v) {
        auto c = static_cast<std::uint64_t>(v * static_cast<double>(side));
        return c >= side ? side - 1 : c;  // points on the far edge belong to the last cell
    };
    return {snap(u.x), snap(u.y)};
}

double hilbert_forward(const HilbertConfig& cfg, Point2D pt) {
    auto [cx, cy] = cell_of(cfg, pt);
    const std::uint64_t index = hilbert_xy_to_index(cfg.order, cx, cy);
    return (static_cast<double>(index) + 0.5) /
           std::ldexp(1.0, 2 * cfg.order);
}

Point2D hilbert_inverse(const HilbertConfig& cfg, double value) {
    if (!(value >= 0.0 && value < 1.0)) {
        throw std::invalid_argument("hilbert_inverse: value must lie in [0, 1)");
    }
    const double cells = std::ldexp(1.0, 2 * cfg.order);
    auto index = static_cast<std::uint64_t>(value * cells);
    if (index >= cfg.cells()) index = cfg.cells() - 1;
    auto [cx, cy] = hilbert_index_to_xy(cfg.order, index);
    const double side = static_cast<double>(cfg.side());
    UnitPoint2D u{(static_cast<double>(cx) + 0.5) / side,
                  (static_cast<double>(cy) + 0.5) / side};
    return to_domain(u, cfg.domain);
}

std::vector<double> map_dataset(const HilbertConfig& cfg, const PointSet2D& points) {
    cfg.validate();
    std::vector<double> out;
    out.reserve(points.size());
    for (const Point2D& pt : points) {
        out.push_back(hilbert_forward(cfg, pt));
    }
    return out;
}

PointSet2D inverse_map(const HilbertConfig& cfg, const std::vector<double>& values) {
    cfg.validate();
    PointSet2D out;
    out.reserve(values.size());
    for (double v : values) {
        out.push_back(hilbert_inverse(cfg, v));
    }
    return out;
}

}  // namespace privpoints
