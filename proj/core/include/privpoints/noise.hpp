#ifndef PRIVPOINTS_NOISE_HPP
#define PRIVPOINTS_NOISE_HPP

#include <cmath>
#include <stdexcept>

#include "privpoints/rng.hpp"

namespace privpoints {

/// One draw from the zero-mean Laplace distribution with the given scale,
/// by inverse CDF: u uniform in (-1/2, 1/2) maps to sign(u)*scale*ln(1-2|u|).
/// E[X] = 0, E|X| = scale, sd = sqrt(2)*scale.
inline double laplace_sample(double scale, Rng& rng) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("laplace_sample: scale must be > 0");
    }
    double u = rng.uniform_symmetric();
    if (u == 0.0) return 0.0;
    double sign = u > 0.0 ? 1.0 : -1.0;
    return sign * scale * std::log(1.0 - 2.0 * std::fabs(u));
}

}  // namespace privpoints

#endif  // PRIVPOINTS_NOISE_HPP
