#ifndef PRIVPOINTS_ISOTONIC_HPP
#define PRIVPOINTS_ISOTONIC_HPP

#include <cstddef>
#include <vector>

namespace privpoints {

/// Result of an isotonic fit: the fitted nondecreasing sequence plus the
/// blocks over which it is constant. pool_boundaries[i] is the one-past-end
/// index of pool i; the last boundary equals the input length.
struct MonotoneFit {
    std::vector<double> values;
    std::vector<std::size_t> pool_boundaries;
};

/// Least-squares isotonic regression by pool-adjacent-violators: the unique
/// minimizer of sum (x_i - a_i)^2 subject to x_1 <= ... <= x_n. Each pool's
/// fitted value is the mean of its inputs. O(n).
MonotoneFit isotonic_l2(const std::vector<double>& a);

/// Least-absolute-deviations isotonic fit. Pool values are medians of the
/// pooled inputs; the minimizer is not unique, and ties are broken by taking
/// the lower median, so e.g. <0.3, 0.1> fits to <0.1, 0.1>.
std::vector<double> isotonic_l1(const std::vector<double>& a);

}  // namespace privpoints

#endif  // PRIVPOINTS_ISOTONIC_HPP
