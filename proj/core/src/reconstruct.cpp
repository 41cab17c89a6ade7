#include "privpoints/reconstruct.hpp"

#include <algorithm>
#include <cmath>

#include "privpoints/hilbert.hpp"
#include "privpoints/isotonic.hpp"

namespace privpoints {

std::vector<double> group_means(const Release& release) {
    release.validate();
    const std::vector<std::size_t> sizes = release.block_sizes();
    std::vector<double> means(release.noisy_sums.size());
    for (std::size_t i = 0; i < means.size(); ++i) {
        means[i] = release.noisy_sums[i] / static_cast<double>(sizes[i]);
    }
    return means;
}

Reconstruction reconstruct(const Release& release) {
    const std::vector<double> means = group_means(release);
    std::vector<double> fit = isotonic_l2(means).values;
    for (double& v : fit) v = std::clamp(v, 0.0, 1.0);

    const std::vector<std::size_t> sizes = release.block_sizes();
    Reconstruction rec;
    rec.values.reserve(release.point_count());
    for (std::size_t i = 0; i < fit.size(); ++i) {
        rec.values.insert(rec.values.end(), sizes[i], fit[i]);
    }

    // A clamped value can be exactly 1, which has no cell of its own; nudge
    // it just below so the inverse map stays defined.
    const double below_one = std::nextafter(1.0, 0.0);
    rec.points.reserve(rec.values.size());
    for (double v : rec.values) {
        rec.points.push_back(hilbert_inverse(release.hilbert, std::min(v, below_one)));
    }
    return rec;
}

}  // namespace privpoints
