#include "privpoints/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "privpoints/reconstruct.hpp"

namespace privpoints {

void DensityEstimate::validate() const {
    if (densities.empty() || breakpoints.size() != densities.size() + 1) {
        throw std::invalid_argument("DensityEstimate: breakpoints/densities mismatch");
    }
    if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
        throw std::invalid_argument("DensityEstimate: breakpoints must span [0,1]");
    }
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1])) {
            throw std::invalid_argument("DensityEstimate: breakpoints must increase");
        }
    }
    for (double d : densities) {
        if (!(d >= 0.0)) throw std::invalid_argument("DensityEstimate: negative density");
    }
}

double DensityEstimate::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return cum_.back();
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    return cum_[j] + densities[j] * (x - breakpoints[j]);
}

DensityEstimate density_from_values(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("density_from_values: empty input");
    std::vector<double> sorted = values;
    for (double v : sorted) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("density_from_values: value outside [0,1]");
        }
    }
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> distinct;
    std::vector<std::size_t> counts;
    for (double v : sorted) {
        if (distinct.empty() || v != distinct.back()) {
            distinct.push_back(v);
            counts.push_back(1);
        } else {
            ++counts.back();
        }
    }

    DensityEstimate est;
    est.breakpoints.push_back(0.0);
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        est.breakpoints.push_back(0.5 * (distinct[i] + distinct[i + 1]));
    }
    est.breakpoints.push_back(1.0);

    const auto n = static_cast<double>(sorted.size());
    est.cum_.resize(est.breakpoints.size());
    est.cum_[0] = 0.0;
    est.densities.resize(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double mass = static_cast<double>(counts[i]) / n;
        const double width = est.breakpoints[i + 1] - est.breakpoints[i];
        est.densities[i] = mass / width;
        est.cum_[i + 1] = est.cum_[i] + mass;
    }
    est.cum_.back() = 1.0;  // the masses sum to 1 in exact arithmetic; pin it
    est.validate();
    return est;
}

namespace {

double clip_overlap(double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

}  // namespace

double range_count(const DensityEstimate& density, const Rect& query,
                   const HilbertConfig& cfg, std::size_t n) {
    cfg.validate();
    if (!(query.max_x >= query.min_x) || !(query.max_y >= query.min_y)) {
        throw std::invalid_argument("range_count: malformed query rectangle");
    }
    const Rect& dom = cfg.domain;

    const double qx0 = std::max(query.min_x, dom.min_x);
    const double qx1 = std::min(query.max_x, dom.max_x);
    const double qy0 = std::max(query.min_y, dom.min_y);
    const double qy1 = std::min(query.max_y, dom.max_y);
    if (!(qx0 < qx1) || !(qy0 < qy1)) return 0.0;  // empty or degenerate

    // The density integrates to 1 by construction, so a query covering the
    // whole domain holds all n points; answer it exactly.
    if (qx0 == dom.min_x && qx1 == dom.max_x && qy0 == dom.min_y &&
        qy1 == dom.max_y) {
        return static_cast<double>(n);
    }

    const double side = static_cast<double>(cfg.side());
    // query edges in cell units
    const double ux0 = (qx0 - dom.min_x) / dom.width() * side;
    const double ux1 = (qx1 - dom.min_x) / dom.width() * side;
    const double uy0 = (qy0 - dom.min_y) / dom.height() * side;
    const double uy1 = (qy1 - dom.min_y) / dom.height() * side;

    const std::uint64_t last = cfg.side() - 1;
    const auto ix0 = std::min(static_cast<std::uint64_t>(ux0), last);
    const auto ix1 = std::min(static_cast<std::uint64_t>(ux1), last);
    const auto iy0 = std::min(static_cast<std::uint64_t>(uy0), last);
    const auto iy1 = std::min(static_cast<std::uint64_t>(uy1), last);

    const double cells = std::ldexp(1.0, 2 * cfg.order);
    double acc = 0.0;
    for (std::uint64_t ix = ix0; ix <= ix1; ++ix) {
        const double fx = clip_overlap(static_cast<double>(ix),
                                       static_cast<double>(ix) + 1.0, ux0, ux1);
        if (fx <= 0.0) continue;
        for (std::uint64_t iy = iy0; iy <= iy1; ++iy) {
            const double fy = clip_overlap(static_cast<double>(iy),
                                           static_cast<double>(iy) + 1.0, uy0, uy1);
            if (fy <= 0.0) continue;
            const std::uint64_t idx = hilbert_xy_to_index(cfg.order, ix, iy);
            const double lo = static_cast<double>(idx) / cells;
            const double hi = (static_cast<double>(idx) + 1.0) / cells;
            const double mass = density.cdf(hi) - density.cdf(lo);
            acc += fx * fy * mass;
        }
    }
    return acc * static_cast<double>(n);
}

double range_count(const std::vector<double>& values1d, const Rect& query,
                   const HilbertConfig& cfg, std::size_t n) {
    return range_count(density_from_values(values1d), query, cfg, n);
}

std::pair<double, Point2D> median_from_release(const Release& release) {
    const Reconstruction rec = reconstruct(release);
    const std::size_t mi = (rec.values.size() - 1) / 2;  // lower middle
    return {rec.values[mi], rec.points[mi]};
}

double lower_median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("lower_median: empty input");
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

PointSet2D diffuse_for_viz(const PointSet2D& points, const HilbertConfig& cfg,
                           Rng& rng) {
    cfg.validate();
    if (points.empty()) return {};
    const Rect& dom = cfg.domain;
    const double side = static_cast<double>(cfg.side());
    const double cap = std::min(dom.width(), dom.height()) / side;  // one grid cell

    // group exactly coincident points (reconstruction emits exact repeats)
    std::map<std::pair<double, double>, std::size_t> group_count;
    for (const Point2D& p : points) ++group_count[{p.x, p.y}];

    // bucket distinct locations at the cap length scale; anything farther
    // than two buckets away cannot shrink the capped radius
    std::unordered_map<std::uint64_t, std::vector<std::pair<double, double>>> buckets;
    auto bucket_key = [&](double x, double y) {
        const auto bx = static_cast<std::int64_t>(std::floor((x - dom.min_x) / cap));
        const auto by = static_cast<std::int64_t>(std::floor((y - dom.min_y) / cap));
        return (static_cast<std::uint64_t>(bx) << 32) ^
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(by));
    };
    for (const auto& [loc, cnt] : group_count) {
        buckets[bucket_key(loc.first, loc.second)].push_back(loc);
    }

    auto radius_at = [&](double x, double y) {
        double best = std::numeric_limits<double>::infinity();
        const auto bx = static_cast<std::int64_t>(std::floor((x - dom.min_x) / cap));
        const auto by = static_cast<std::int64_t>(std::floor((y - dom.min_y) / cap));
        for (std::int64_t dx = -2; dx <= 2; ++dx) {
            for (std::int64_t dy = -2; dy <= 2; ++dy) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(bx + dx) << 32) ^
                    static_cast<std::uint64_t>(static_cast<std::uint32_t>(by + dy));
                const auto it = buckets.find(key);
                if (it == buckets.end()) continue;
                for (const auto& loc : it->second) {
                    if (loc.first == x && loc.second == y) continue;
                    best = std::min(best, std::hypot(loc.first - x, loc.second - y));
                }
            }
        }
        return std::min(best / 2.0, cap);
    };

    PointSet2D out;
    out.reserve(points.size());
    for (const Point2D& p : points) {
        if (group_count[{p.x, p.y}] == 1) {
            out.push_back(p);
            continue;
        }
        const double r = radius_at(p.x, p.y) * std::sqrt(rng.uniform01());
        const double theta = 2.0 * std::numbers::pi * rng.uniform01();
        Point2D moved{p.x + r * std::cos(theta), p.y + r * std::sin(theta)};
        moved.x = std::clamp(moved.x, dom.min_x, dom.max_x);
        moved.y = std::clamp(moved.y, dom.min_y, dom.max_y);
        out.push_back(moved);
    }
    return out;
}

}  // namespace privpoints
