#ifndef PRIVPOINTS_RECONSTRUCT_HPP
#define PRIVPOINTS_RECONSTRUCT_HPP

#include <vector>

#include "privpoints/geometry.hpp"
#include "privpoints/mechanism.hpp"

namespace privpoints {

/// A reconstructed dataset: the 1D curve positions (nondecreasing, with
/// multiplicities, inside [0,1]) and their 2D pre-images in the domain.
struct Reconstruction {
    std::vector<double> values;
    PointSet2D points;
};

/// Per-group means implied by a release: each noisy sum divided by its
/// actual block size (k, or tail_size for the last block).
std::vector<double> group_means(const Release& release);

/// Undo a release: divide sums by block sizes, isotonic-L2 fit, clamp to
/// [0,1], repeat each fitted value over its block, then map the values back
/// through the curve into the domain. Output size equals the original n.
Reconstruction reconstruct(const Release& release);

}  // namespace privpoints

#endif  // PRIVPOINTS_RECONSTRUCT_HPP
