#include "privpoints/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "privpoints/noise.hpp"

namespace privpoints {

namespace {

void require_inside(const Rect& domain, const Point2D& p) {
    if (!domain.contains(p)) {
        std::ostringstream msg;
        msg << "point (" << p.x << ", " << p.y << ") lies outside the domain ["
            << domain.min_x << ", " << domain.max_x << "] x [" << domain.min_y
            << ", " << domain.max_y << "]";
        throw std::invalid_argument(msg.str());
    }
}

std::size_t axis_bin(double v, double lo, double extent, std::size_t bins) {
    auto b = static_cast<std::size_t>((v - lo) / extent * static_cast<double>(bins));
    return std::min(b, bins - 1);
}

// Clips a query to the domain and reports it in bin units. Returns false if
// the intersection is empty or degenerate; sets full if it covers everything.
bool query_in_bin_units(const Rect& query, const Rect& domain, std::size_t bins,
                        double& u0, double& u1, double& v0, double& v1, bool& full) {
    if (!(query.max_x >= query.min_x) || !(query.max_y >= query.min_y)) {
        throw std::invalid_argument("range query: malformed rectangle");
    }
    const double qx0 = std::max(query.min_x, domain.min_x);
    const double qx1 = std::min(query.max_x, domain.max_x);
    const double qy0 = std::max(query.min_y, domain.min_y);
    const double qy1 = std::min(query.max_y, domain.max_y);
    if (!(qx0 < qx1) || !(qy0 < qy1)) return false;
    full = qx0 == domain.min_x && qx1 == domain.max_x && qy0 == domain.min_y &&
           qy1 == domain.max_y;
    const double b = static_cast<double>(bins);
    u0 = (qx0 - domain.min_x) / domain.width() * b;
    u1 = (qx1 - domain.min_x) / domain.width() * b;
    v0 = (qy0 - domain.min_y) / domain.height() * b;
    v1 = (qy1 - domain.min_y) / domain.height() * b;
    return true;
}

}  // namespace

void NoisyHistogram2D::validate() const {
    if (bins_per_axis < 1) {
        throw std::invalid_argument("NoisyHistogram2D: bins_per_axis must be >= 1");
    }
    if (counts.size() != bins_per_axis * bins_per_axis) {
        throw std::invalid_argument("NoisyHistogram2D: counts size mismatch");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("NoisyHistogram2D: epsilon must be > 0");
    }
    domain.validate();
}

NoisyHistogram2D equiwidth_publish(const PointSet2D& points, std::size_t bins_per_axis,
                                   double epsilon, const Rect& domain, Rng& rng,
                                   bool add_noise) {
    if (bins_per_axis < 1) {
        throw std::invalid_argument("equiwidth_publish: bins_per_axis must be >= 1");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("equiwidth_publish: epsilon must be > 0");
    }
    domain.validate();

    NoisyHistogram2D hist;
    hist.bins_per_axis = bins_per_axis;
    hist.epsilon = epsilon;
    hist.domain = domain;
    hist.point_count = points.size();
    hist.counts.assign(bins_per_axis * bins_per_axis, 0.0);
    for (const Point2D& p : points) {
        require_inside(domain, p);
        const std::size_t ix = axis_bin(p.x, domain.min_x, domain.width(), bins_per_axis);
        const std::size_t iy = axis_bin(p.y, domain.min_y, domain.height(), bins_per_axis);
        hist.counts[iy * bins_per_axis + ix] += 1.0;
    }
    if (add_noise) {
        const double scale = 2.0 / epsilon;
        for (double& c : hist.counts) c += laplace_sample(scale, rng);
    }
    return hist;
}

double equiwidth_range_count(const NoisyHistogram2D& hist, const Rect& query) {
    hist.validate();
    double u0, u1, v0, v1;
    bool full = false;
    if (!query_in_bin_units(query, hist.domain, hist.bins_per_axis, u0, u1, v0, v1,
                            full)) {
        return 0.0;
    }
    if (full) return static_cast<double>(hist.point_count);

    const std::size_t b = hist.bins_per_axis;
    const auto ix0 = std::min(static_cast<std::size_t>(u0), b - 1);
    const auto ix1 = std::min(static_cast<std::size_t>(u1), b - 1);
    const auto iy0 = std::min(static_cast<std::size_t>(v0), b - 1);
    const auto iy1 = std::min(static_cast<std::size_t>(v1), b - 1);
    double acc = 0.0;
    for (std::size_t iy = iy0; iy <= iy1; ++iy) {
        const double fy = std::max(
            0.0, std::min(v1, static_cast<double>(iy) + 1.0) -
                     std::max(v0, static_cast<double>(iy)));
        if (fy <= 0.0) continue;
        for (std::size_t ix = ix0; ix <= ix1; ++ix) {
            const double fx = std::max(
                0.0, std::min(u1, static_cast<double>(ix) + 1.0) -
                         std::max(u0, static_cast<double>(ix)));
            if (fx <= 0.0) continue;
            acc += fx * fy * hist.counts[iy * b + ix];
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------

void haar2d_forward(std::vector<double>& grid, std::size_t levels) {
    const std::size_t m = std::size_t{1} << levels;
    if (grid.size() != m * m) {
        throw std::invalid_argument("haar2d_forward: grid size must be 4^levels");
    }
    std::vector<double> tmp(m * m);
    for (std::size_t s = m; s >= 2; s /= 2) {
        const std::size_t h = s / 2;
        for (std::size_t by = 0; by < h; ++by) {
            for (std::size_t bx = 0; bx < h; ++bx) {
                const double a = grid[(2 * by) * m + 2 * bx];
                const double b = grid[(2 * by) * m + 2 * bx + 1];
                const double c = grid[(2 * by + 1) * m + 2 * bx];
                const double d = grid[(2 * by + 1) * m + 2 * bx + 1];
                tmp[by * m + bx] = (a + b + c + d) / 4.0;            // mean
                tmp[by * m + bx + h] = (a + c - b - d) / 4.0;        // horizontal
                tmp[(by + h) * m + bx] = (a + b - c - d) / 4.0;      // vertical
                tmp[(by + h) * m + bx + h] = (a + d - b - c) / 4.0;  // diagonal
            }
        }
        for (std::size_t y = 0; y < s; ++y) {
            for (std::size_t x = 0; x < s; ++x) grid[y * m + x] = tmp[y * m + x];
        }
    }
}

void haar2d_inverse(std::vector<double>& grid, std::size_t levels) {
    const std::size_t m = std::size_t{1} << levels;
    if (grid.size() != m * m) {
        throw std::invalid_argument("haar2d_inverse: grid size must be 4^levels");
    }
    std::vector<double> tmp(m * m);
    for (std::size_t s = 2; s <= m; s *= 2) {
        const std::size_t h = s / 2;
        for (std::size_t by = 0; by < h; ++by) {
            for (std::size_t bx = 0; bx < h; ++bx) {
                const double mean = grid[by * m + bx];
                const double dh = grid[by * m + bx + h];
                const double dv = grid[(by + h) * m + bx];
                const double dd = grid[(by + h) * m + bx + h];
                tmp[(2 * by) * m + 2 * bx] = mean + dh + dv + dd;          // a
                tmp[(2 * by) * m + 2 * bx + 1] = mean - dh + dv - dd;      // b
                tmp[(2 * by + 1) * m + 2 * bx] = mean + dh - dv - dd;      // c
                tmp[(2 * by + 1) * m + 2 * bx + 1] = mean - dh - dv + dd;  // d
            }
        }
        for (std::size_t y = 0; y < s; ++y) {
            for (std::size_t x = 0; x < s; ++x) grid[y * m + x] = tmp[y * m + x];
        }
    }
}

void NoisyWaveletTransform::validate() const {
    if (levels < 1 || levels > 10) {
        throw std::invalid_argument("NoisyWaveletTransform: levels must be in [1, 10]");
    }
    if (coeffs.size() != side() * side()) {
        throw std::invalid_argument("NoisyWaveletTransform: coefficient size mismatch");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("NoisyWaveletTransform: epsilon must be > 0");
    }
    if (coeffs[0] != static_cast<double>(point_count)) {
        throw std::invalid_argument("NoisyWaveletTransform: DC must equal the count");
    }
    domain.validate();
}

NoisyWaveletTransform wavelet_publish(const PointSet2D& points, std::size_t levels,
                                      double epsilon, const Rect& domain, Rng& rng,
                                      bool add_noise) {
    if (levels < 1 || levels > 10) {
        throw std::invalid_argument("wavelet_publish: levels must be in [1, 10]");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("wavelet_publish: epsilon must be > 0");
    }
    domain.validate();

    NoisyWaveletTransform wt;
    wt.levels = levels;
    wt.epsilon = epsilon;
    wt.domain = domain;
    wt.point_count = points.size();
    const std::size_t m = wt.side();
    wt.coeffs.assign(m * m, 0.0);
    for (const Point2D& p : points) {
        require_inside(domain, p);
        const std::size_t ix = axis_bin(p.x, domain.min_x, domain.width(), m);
        const std::size_t iy = axis_bin(p.y, domain.min_y, domain.height(), m);
        wt.coeffs[iy * m + ix] += 1.0;
    }
    haar2d_forward(wt.coeffs, levels);
    if (add_noise) {
        const double scale = 2.0 * static_cast<double>(levels + 1) / epsilon;
        for (std::size_t i = 1; i < wt.coeffs.size(); ++i) {
            wt.coeffs[i] += laplace_sample(scale, rng);
        }
    }
    // The DC slot publishes the exact total; the count is public under the
    // replacement neighborhood. (The transform itself keeps the mean there.)
    wt.coeffs[0] = static_cast<double>(wt.point_count);
    return wt;
}

WaveletCounter::WaveletCounter(const NoisyWaveletTransform& wt) {
    wt.validate();
    side_ = wt.side();
    domain_ = wt.domain;
    n_ = wt.point_count;

    std::vector<double> bins = wt.coeffs;
    bins[0] /= static_cast<double>(side_ * side_);  // back to the mean convention
    haar2d_inverse(bins, wt.levels);

    prefix_.assign((side_ + 1) * (side_ + 1), 0.0);
    for (std::size_t y = 0; y < side_; ++y) {
        for (std::size_t x = 0; x < side_; ++x) {
            prefix_[(y + 1) * (side_ + 1) + (x + 1)] =
                bins[y * side_ + x] + prefix_[y * (side_ + 1) + (x + 1)] +
                prefix_[(y + 1) * (side_ + 1) + x] - prefix_[y * (side_ + 1) + x];
        }
    }
}

double WaveletCounter::count(const Rect& query) const {
    double u0, u1, v0, v1;
    bool full = false;
    if (!query_in_bin_units(query, domain_, side_, u0, u1, v0, v1, full)) return 0.0;
    if (full) return static_cast<double>(n_);

    const std::size_t stride = side_ + 1;
    auto P = [&](std::size_t row, std::size_t col) { return prefix_[row * stride + col]; };
    // mass of [0,u] x [0,v] with fractional edge bins treated as uniform
    auto cumulative = [&](double u, double v) {
        const auto i = std::min(static_cast<std::size_t>(u), side_ - 1);
        const auto j = std::min(static_cast<std::size_t>(v), side_ - 1);
        const double fx = u - static_cast<double>(i);
        const double fy = v - static_cast<double>(j);
        const double whole = P(j, i);
        const double col_strip = P(j, i + 1) - P(j, i);
        const double row_strip = P(j + 1, i) - P(j, i);
        const double corner = P(j + 1, i + 1) - P(j + 1, i) - P(j, i + 1) + P(j, i);
        return whole + fx * col_strip + fy * row_strip + fx * fy * corner;
    };
    return cumulative(u1, v1) - cumulative(u0, v1) - cumulative(u1, v0) +
           cumulative(u0, v0);
}

double wavelet_range_count(const NoisyWaveletTransform& wt, const Rect& query) {
    return WaveletCounter(wt).count(query);
}

// ---------------------------------------------------------------------------

namespace {

void require_sorted_unit(const std::vector<double>& values, const char* who) {
    if (values.size() < 3) {
        throw std::invalid_argument(std::string(who) + ": need at least 3 values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw std::invalid_argument(std::string(who) + ": value outside [0,1]");
        }
        if (i > 0 && values[i] < values[i - 1]) {
            throw std::invalid_argument(std::string(who) + ": values must be sorted");
        }
    }
}

// value at a clamped index: below the data it is 0, above it is 1
double at_clamped(const std::vector<double>& values, std::ptrdiff_t i) {
    if (i < 0) return 0.0;
    if (i >= static_cast<std::ptrdiff_t>(values.size())) return 1.0;
    return values[static_cast<std::size_t>(i)];
}

}  // namespace

double smooth_sensitivity_of_median(const std::vector<double>& values, double epsilon) {
    require_sorted_unit(values, "smooth_sensitivity_of_median");
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("smooth_sensitivity_of_median: epsilon must be > 0");
    }
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    const std::ptrdiff_t mi = (n - 1) / 2;  // lower middle

    double s = 0.0;
    for (std::ptrdiff_t t = 0; t <= n; ++t) {
        double ls_t = 0.0;
        for (std::ptrdiff_t j = 0; j <= t + 1; ++j) {
            ls_t = std::max(ls_t, at_clamped(values, mi + j) -
                                      at_clamped(values, mi + j - t - 1));
        }
        s = std::max(s, std::exp(-epsilon * static_cast<double>(t)) * ls_t);
    }
    return s;
}

double local_sensitivity_median(const std::vector<double>& values) {
    require_sorted_unit(values, "local_sensitivity_median");
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    const std::ptrdiff_t mi = (n - 1) / 2;
    return std::max(at_clamped(values, mi + 1) - at_clamped(values, mi),
                    at_clamped(values, mi) - at_clamped(values, mi - 1));
}

SmoothSensitivityResult smooth_sensitivity_median(const std::vector<double>& values,
                                                  double epsilon, Rng& rng,
                                                  bool add_noise) {
    const double s = smooth_sensitivity_of_median(values, epsilon);
    const std::size_t mi = (values.size() - 1) / 2;
    double noisy = values[mi];
    if (add_noise && s > 0.0) {
        noisy += laplace_sample(2.0 * s / epsilon, rng);
    }
    return {s, noisy, epsilon};
}

}  // namespace privpoints
