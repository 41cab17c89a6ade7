#include "privpoints/pointset.hpp"

#include <algorithm>
#include <stdexcept>

namespace privpoints {

std::vector<double> repeating_value_data(std::size_t n, double value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("repeating_value_data: value must be in [0,1]");
    }
    return std::vector<double>(n, value);
}

std::vector<double> equally_spaced_data(std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {0.5};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

std::vector<double> uniform_data(std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = rng.uniform01();
    return out;
}

std::vector<double> exponential_data(std::size_t n, Rng& rng) {
    std::vector<double> out(n);
    for (double& v : out) v = rng.exponential();
    std::sort(out.begin(), out.end());
    const double top = out.empty() ? 1.0 : out.back();
    if (top > 0.0) {
        for (double& v : out) v /= top;
    }
    return out;
}

PointSet2D clustered_points(std::size_t n, std::size_t clusters, double spread,
                            const Rect& domain, Rng& rng) {
    domain.validate();
    if (clusters == 0) throw std::invalid_argument("clustered_points: clusters must be >= 1");
    if (!(spread > 0.0)) throw std::invalid_argument("clustered_points: spread must be > 0");

    std::vector<Point2D> centers(clusters);
    for (Point2D& c : centers) {
        c.x = domain.min_x + domain.width() * (0.1 + 0.8 * rng.uniform01());
        c.y = domain.min_y + domain.height() * (0.1 + 0.8 * rng.uniform01());
    }
    const double sx = spread * domain.width();
    const double sy = spread * domain.height();

    PointSet2D out;
    out.reserve(n);
    while (out.size() < n) {
        const Point2D& c = centers[rng.below(clusters)];
        Point2D p{c.x + sx * rng.normal(), c.y + sy * rng.normal()};
        if (domain.contains(p)) out.push_back(p);
    }
    return out;
}

PointSet2D uniform_points(std::size_t n, const Rect& domain, Rng& rng) {
    domain.validate();
    PointSet2D out(n);
    for (Point2D& p : out) {
        p.x = domain.min_x + domain.width() * rng.uniform01();
        p.y = domain.min_y + domain.height() * rng.uniform01();
    }
    return out;
}

std::vector<double> median_benchmark_data(Rng& rng) {
    std::vector<double> out = exponential_data(66, rng);  // sorted, max = 1
    out.insert(out.end(), 63, 1.0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> median_data_with_local_sensitivity(double ls, Rng& rng) {
    if (!(ls > 0.0 && ls < 1.0)) {
        throw std::invalid_argument(
            "median_data_with_local_sensitivity: ls must be in (0,1)");
    }
    // 129 sorted values with median (65th smallest) at 1-ls. The 64th value
    // is also 1-ls and the 66th is 1, so the median's neighbor gaps are 0
    // below and ls above: local sensitivity is exactly ls.
    std::vector<double> draws(66);
    for (double& v : draws) v = rng.exponential();
    std::sort(draws.begin(), draws.end());

    std::vector<double> out;
    out.reserve(129);
    const double scale_ref = draws[64];  // second largest draw
    for (std::size_t i = 0; i < 63; ++i) {
        out.push_back(draws[i] / scale_ref * (1.0 - ls));
    }
    out.push_back(1.0 - ls);
    out.push_back(1.0 - ls);
    out.insert(out.end(), 64, 1.0);  // 63 ones + the largest draw pinned to 1
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace privpoints
