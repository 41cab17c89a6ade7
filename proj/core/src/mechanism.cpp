#include "privpoints/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "privpoints/noise.hpp"

namespace privpoints {

std::size_t GroupPartition::total() const {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
}

void GroupPartition::validate() const {
    if (sizes.empty()) throw std::invalid_argument("GroupPartition: no blocks");
    for (std::size_t s : sizes) {
        if (s == 0) throw std::invalid_argument("GroupPartition: empty block");
    }
}

std::vector<std::size_t> Release::block_sizes() const {
    std::vector<std::size_t> sizes(noisy_sums.size(), group_size);
    if (!sizes.empty()) sizes.back() = tail_size;
    return sizes;
}

void Release::validate() const {
    if (noisy_sums.empty()) throw std::invalid_argument("Release: no groups");
    if (group_size < 1) throw std::invalid_argument("Release: group_size must be >= 1");
    if (tail_size < 1 || tail_size > group_size) {
        throw std::invalid_argument("Release: tail_size must be in [1, group_size]");
    }
    if (!(epsilon > 0.0)) throw std::invalid_argument("Release: epsilon must be > 0");
    for (double s : noisy_sums) {
        if (!std::isfinite(s)) throw std::invalid_argument("Release: non-finite sum");
    }
    hilbert.validate();
}

std::vector<double> sort_sequence(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("sort_sequence: empty input");
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("sort_sequence: value outside [0,1]");
        }
    }
    std::sort(values.begin(), values.end());
    return values;
}

GroupPartition equal_depth_partition(std::size_t n, std::size_t k) {
    if (k < 1) throw std::invalid_argument("equal_depth_partition: k must be >= 1");
    if (k > n) throw std::invalid_argument("equal_depth_partition: k must be <= n");
    const std::size_t m = (n + k - 1) / k;
    GroupPartition p;
    p.sizes.assign(m, k);
    p.sizes.back() = n - (m - 1) * k;
    return p;
}

std::vector<double> grouped_sums(const std::vector<double>& seq,
                                 const GroupPartition& partition) {
    partition.validate();
    if (partition.total() != seq.size()) {
        throw std::invalid_argument("grouped_sums: partition does not cover the sequence");
    }
    std::vector<double> sums;
    sums.reserve(partition.sizes.size());
    std::size_t i = 0;
    for (std::size_t s : partition.sizes) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s; ++j) acc += seq[i++];
        sums.push_back(acc);
    }
    return sums;
}

std::pair<std::vector<double>, GroupPartition> group_sums(
    const std::vector<double>& sorted_seq, std::size_t k) {
    GroupPartition p = equal_depth_partition(sorted_seq.size(), k);
    return {grouped_sums(sorted_seq, p), std::move(p)};
}

namespace {

Release publish_sorted(std::vector<double> sorted_values, double epsilon,
                       std::size_t k, const HilbertConfig& cfg, Rng& rng,
                       bool add_noise) {
    auto [sums, partition] = group_sums(sorted_values, k);
    if (add_noise) {
        const double scale = 1.0 / epsilon;
        for (double& s : sums) s += laplace_sample(scale, rng);
    }
    Release rel;
    rel.noisy_sums = std::move(sums);
    rel.group_size = k;
    rel.tail_size = partition.sizes.back();
    rel.epsilon = epsilon;
    rel.hilbert = cfg;
    return rel;
}

}  // namespace

Release publish(const PointSet2D& points, double epsilon, std::size_t k,
                const HilbertConfig& cfg, Rng& rng, bool add_noise) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("publish: epsilon must be > 0");
    if (points.empty()) throw std::invalid_argument("publish: empty pointset");
    cfg.validate();
    std::vector<double> mapped = map_dataset(cfg, points);
    std::sort(mapped.begin(), mapped.end());
    return publish_sorted(std::move(mapped), epsilon, k, cfg, rng, add_noise);
}

Release publish_values(const std::vector<double>& values, double epsilon,
                       std::size_t k, const HilbertConfig& cfg, Rng& rng,
                       bool add_noise) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("publish: epsilon must be > 0");
    cfg.validate();
    return publish_sorted(sort_sequence(values), epsilon, k, cfg, rng, add_noise);
}

std::vector<double> pad_to_size(std::vector<double> sorted_seq, std::size_t target) {
    if (target < 1) throw std::invalid_argument("pad_to_size: target must be >= 1");
    const std::size_t n = sorted_seq.size();
    if (target > n) {
        sorted_seq.insert(sorted_seq.begin(), target - n, 0.0);
    } else if (target < n) {
        sorted_seq.erase(sorted_seq.begin(),
                         sorted_seq.begin() + static_cast<std::ptrdiff_t>(n - target));
    }
    return sorted_seq;
}

std::pair<std::size_t, Release> publish_with_private_size(
    const PointSet2D& points, double epsilon_total, double rho, std::size_t k,
    const HilbertConfig& cfg, Rng& rng, bool add_noise) {
    if (!(epsilon_total > 0.0)) {
        throw std::invalid_argument("publish_with_private_size: epsilon must be > 0");
    }
    if (!(rho > 0.0 && rho < 1.0)) {
        throw std::invalid_argument("publish_with_private_size: rho must be in (0,1)");
    }
    if (points.empty()) {
        throw std::invalid_argument("publish_with_private_size: empty pointset");
    }
    cfg.validate();

    const double eps_count = rho * epsilon_total;
    const double eps_publish = epsilon_total - eps_count;

    std::vector<double> mapped = map_dataset(cfg, points);
    std::sort(mapped.begin(), mapped.end());

    double noisy = static_cast<double>(mapped.size());
    if (add_noise) noisy += laplace_sample(1.0 / eps_count, rng);
    const auto target =
        static_cast<std::size_t>(std::max(1.0, std::round(noisy)));

    std::vector<double> padded = pad_to_size(std::move(mapped), target);
    std::size_t kk = std::min(k, padded.size());
    Release rel = publish_sorted(std::move(padded), eps_publish, kk, cfg, rng, add_noise);
    return {target, rel};
}

}  // namespace privpoints
