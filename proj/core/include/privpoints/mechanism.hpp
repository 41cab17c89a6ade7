#ifndef PRIVPOINTS_MECHANISM_HPP
#define PRIVPOINTS_MECHANISM_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/hilbert.hpp"
#include "privpoints/rng.hpp"

namespace privpoints {

/// Consecutive index blocks covering {0..n-1}; block i has sizes[i] elements.
struct GroupPartition {
    std::vector<std::size_t> sizes;

    std::size_t total() const;
    void validate() const;  // every block nonempty
};

/// The published artifact: per-group noisy sums plus everything a consumer
/// needs to undo the grouping and the 2D -> 1D map. noisy_sums carries no
/// sign or ordering constraint -- the noise is published as drawn.
struct Release {
    std::vector<double> noisy_sums;
    std::size_t group_size = 1;  // k; every group but possibly the last has this size
    std::size_t tail_size = 1;   // size of the last group, in [1, k]
    double epsilon = 1.0;
    HilbertConfig hilbert;

    std::size_t point_count() const {
        return noisy_sums.empty() ? 0
                                  : (noisy_sums.size() - 1) * group_size + tail_size;
    }
    std::vector<std::size_t> block_sizes() const;
    void validate() const;  // throws std::invalid_argument
};

/// Sort a multiset of unit-interval values. Under the replacement
/// neighborhood this map has L1 sensitivity 1, which is what the whole
/// mechanism's privacy rests on; values outside [0,1] are rejected because
/// the bound assumes the unit interval.
std::vector<double> sort_sequence(std::vector<double> values);

/// Equal-depth partition of n elements into blocks of k, short final block
/// allowed. Requires 1 <= k <= n.
GroupPartition equal_depth_partition(std::size_t n, std::size_t k);

/// Per-block sums of `seq` under an arbitrary partition.
std::vector<double> grouped_sums(const std::vector<double>& seq,
                                 const GroupPartition& partition);

/// Sums of consecutive k-element groups of a sorted sequence.
std::pair<std::vector<double>, GroupPartition> group_sums(
    const std::vector<double>& sorted_seq, std::size_t k);

/// The full publishing pipeline: map points to [0,1) along the curve, sort,
/// sum groups of k, add i.i.d. Laplace(1/epsilon) noise per sum. The result
/// is epsilon-differentially private under the replacement neighborhood.
/// `add_noise = false` is a test hook that publishes the exact sums.
Release publish(const PointSet2D& points, double epsilon, std::size_t k,
                const HilbertConfig& cfg, Rng& rng, bool add_noise = true);

/// publish() for values that are already 1D; used by the error model and
/// the 1D median comparison. Values need not be pre-sorted.
Release publish_values(const std::vector<double>& values, double epsilon,
                       std::size_t k, const HilbertConfig& cfg, Rng& rng,
                       bool add_noise = true);

/// Resize a sorted sequence to exactly `target` elements: prepend zeros to
/// grow, drop the smallest elements to shrink.
std::vector<double> pad_to_size(std::vector<double> sorted_seq, std::size_t target);

/// Publish while hiding the true size: spends rho*epsilon_total on a noisy
/// count n~ = round(n + Laplace(1/(rho*eps))) clamped to >= 1, pads the
/// sorted sequence to n~, then publishes it with the remaining
/// (1-rho)*epsilon_total. Sequential composition gives epsilon_total overall.
std::pair<std::size_t, Release> publish_with_private_size(
    const PointSet2D& points, double epsilon_total, double rho, std::size_t k,
    const HilbertConfig& cfg, Rng& rng, bool add_noise = true);

}  // namespace privpoints

#endif  // PRIVPOINTS_MECHANISM_HPP
