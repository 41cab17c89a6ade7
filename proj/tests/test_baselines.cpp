#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "privpoints/baselines.hpp"
#include "privpoints/pointset.hpp"
#include "privpoints/rng.hpp"

using namespace privpoints;

namespace {

PointSet2D demo_points() {
    // 10 points with known bin placement on a 4x4 grid over the unit square.
    return {{0.1, 0.1}, {0.1, 0.1}, {0.3, 0.1}, {0.6, 0.6}, {0.6, 0.6},
            {0.6, 0.6}, {0.9, 0.9}, {0.05, 0.9}, {0.9, 0.05}, {0.5, 0.5}};
}

}  // namespace

TEST_CASE("equi-width histogram without noise reproduces exact bin counts") {
    const PointSet2D pts = demo_points();
    Rng rng(1);
    const auto hist = equiwidth_publish(pts, 4, 1.0, {0.0, 0.0, 1.0, 1.0}, rng,
                                        /*add_noise=*/false);
    CHECK_NOTHROW(hist.validate());
    REQUIRE(hist.counts.size() == 16);
    double total = 0.0;
    for (double c : hist.counts) total += c;
    CHECK(total == 10.0);
    // (0.1, 0.1) twice and (0.3, 0.1) land in bins (0,0) and (1,0).
    CHECK(hist.counts[0] == 2.0);
    CHECK(hist.counts[1] == 1.0);
    // (0.6, 0.6) three times plus (0.5, 0.5) -- which sits on an interior
    // edge and goes to the upper bin -- all land in bin (2,2).
    CHECK(hist.counts[2 * 4 + 2] == 4.0);
    // boundary-max point snaps inward
    Rng rng2(1);
    const auto h2 = equiwidth_publish({{1.0, 1.0}}, 4, 1.0, {0.0, 0.0, 1.0, 1.0}, rng2,
                                      false);
    CHECK(h2.counts[15] == 1.0);
}

TEST_CASE("equi-width range counts use fractional bin overlap") {
    const PointSet2D pts = demo_points();
    Rng rng(1);
    const auto hist = equiwidth_publish(pts, 4, 1.0, {0.0, 0.0, 1.0, 1.0}, rng, false);

    // Full cover answers the public count exactly.
    CHECK(equiwidth_range_count(hist, {0.0, 0.0, 1.0, 1.0}) == 10.0);
    CHECK(equiwidth_range_count(hist, {-5.0, -5.0, 5.0, 5.0}) == 10.0);

    // A single whole bin.
    CHECK(equiwidth_range_count(hist, {0.5, 0.5, 0.75, 0.75}) ==
          doctest::Approx(4.0).epsilon(1e-12));

    // Left half of the first column of bins.
    const double half_col = equiwidth_range_count(hist, {0.0, 0.0, 0.125, 1.0});
    double col0 = 0.0;
    for (int iy = 0; iy < 4; ++iy) col0 += hist.counts[iy * 4];
    CHECK(half_col == doctest::Approx(0.5 * col0).epsilon(1e-12));

    // Outside the domain.
    CHECK(equiwidth_range_count(hist, {2.0, 2.0, 3.0, 3.0}) == 0.0);
    CHECK_THROWS_AS(equiwidth_range_count(hist, {0.5, 0.0, 0.1, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("equi-width noise is Laplace(2/eps) and deterministic per seed") {
    const PointSet2D pts = demo_points();
    Rng a(7), b(7), c(8);
    const auto ha = equiwidth_publish(pts, 41, 1.0, {0.0, 0.0, 1.0, 1.0}, a);
    const auto hb = equiwidth_publish(pts, 41, 1.0, {0.0, 0.0, 1.0, 1.0}, b);
    const auto hc = equiwidth_publish(pts, 41, 1.0, {0.0, 0.0, 1.0, 1.0}, c);
    CHECK(ha.counts.size() == 1681);
    CHECK(ha.counts == hb.counts);
    CHECK(ha.counts != hc.counts);

    // Empirical scale check across many draws: mean |noise| ~ 2/eps.
    Rng rng(9);
    const auto h = equiwidth_publish({}, 64, 0.5, {0.0, 0.0, 1.0, 1.0}, rng);
    double mean_abs = 0.0;
    for (double v : h.counts) mean_abs += std::abs(v);
    mean_abs /= static_cast<double>(h.counts.size());
    CHECK(mean_abs == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("points outside the domain are rejected") {
    Rng rng(1);
    CHECK_THROWS_AS(equiwidth_publish({{1.5, 0.5}}, 4, 1.0, {0.0, 0.0, 1.0, 1.0}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(wavelet_publish({{-0.1, 0.5}}, 3, 1.0, {0.0, 0.0, 1.0, 1.0}, rng),
                    std::invalid_argument);
}

TEST_CASE("Haar transform round-trips") {
    Rng rng(13);
    for (std::size_t levels : {1u, 2u, 4u}) {
        const std::size_t m = std::size_t{1} << levels;
        std::vector<double> grid(m * m);
        for (auto& v : grid) v = rng.uniform(-3.0, 7.0);
        std::vector<double> copy = grid;
        haar2d_forward(copy, levels);
        haar2d_inverse(copy, levels);
        for (std::size_t i = 0; i < grid.size(); ++i)
            REQUIRE(copy[i] == doctest::Approx(grid[i]).epsilon(1e-9));
    }
    std::vector<double> wrong(5);
    CHECK_THROWS_AS(haar2d_forward(wrong, 1), std::invalid_argument);
}

TEST_CASE("the transform's first slot is the grand mean") {
    std::vector<double> grid = {1.0, 2.0, 3.0, 4.0};
    haar2d_forward(grid, 1);
    CHECK(grid[0] == doctest::Approx(2.5));
    // single point in the a-position of a 2x2 grid
    std::vector<double> one = {1.0, 0.0, 0.0, 0.0};
    haar2d_forward(one, 1);
    CHECK(one[0] == doctest::Approx(0.25));
    CHECK(one[1] == doctest::Approx(0.25));   // horizontal
    CHECK(one[2] == doctest::Approx(0.25));   // vertical
    CHECK(one[3] == doctest::Approx(0.25));   // diagonal
}

TEST_CASE("wavelet publication pins the DC slot to the exact count") {
    const PointSet2D pts = demo_points();
    Rng rng(3);
    const auto wt = wavelet_publish(pts, 5, 1.0, {0.0, 0.0, 1.0, 1.0}, rng);
    CHECK_NOTHROW(wt.validate());
    CHECK(wt.coeffs[0] == 10.0);
    CHECK(wt.side() == 32);

    Rng rng2(3);
    const auto quiet = wavelet_publish(pts, 5, 1.0, {0.0, 0.0, 1.0, 1.0}, rng2, false);
    CHECK(quiet.coeffs[0] == 10.0);

    CHECK_THROWS_AS(wavelet_publish(pts, 0, 1.0, {0.0, 0.0, 1.0, 1.0}, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(wavelet_publish(pts, 11, 1.0, {0.0, 0.0, 1.0, 1.0}, rng),
                    std::invalid_argument);
}

TEST_CASE("wavelet range counts match exact counts when no noise is added") {
    const PointSet2D pts = demo_points();
    Rng rng(3);
    const auto wt = wavelet_publish(pts, 4, 1.0, {0.0, 0.0, 1.0, 1.0}, rng, false);
    const WaveletCounter counter(wt);

    CHECK(counter.count({0.0, 0.0, 1.0, 1.0}) == 10.0);
    // Grid-aligned quadrants: {0.1,0.1} x2 and {0.3,0.1} below-left; {0.5,0.5},
    // {0.6,0.6} x3 and {0.9,0.9} upper-right.
    CHECK(counter.count({0.0, 0.0, 0.5, 0.5}) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(counter.count({0.5, 0.5, 1.0, 1.0}) == doctest::Approx(5.0).epsilon(1e-9));
    // Brute-force comparison on random fractional rectangles against the
    // inverted histogram.
    std::vector<double> bins = wt.coeffs;
    bins[0] /= static_cast<double>(wt.side() * wt.side());
    haar2d_inverse(bins, wt.levels);
    const std::size_t m = wt.side();
    Rng qrng(17);
    for (int q = 0; q < 300; ++q) {
        const double x0 = qrng.uniform01() * 0.9;
        const double y0 = qrng.uniform01() * 0.9;
        const double x1 = x0 + qrng.uniform01() * (1.0 - x0);
        const double y1 = y0 + qrng.uniform01() * (1.0 - y0);
        double expect = 0.0;
        for (std::size_t iy = 0; iy < m; ++iy) {
            for (std::size_t ix = 0; ix < m; ++ix) {
                const double bx0 = static_cast<double>(ix) / m;
                const double by0 = static_cast<double>(iy) / m;
                const double bx1 = bx0 + 1.0 / m;
                const double by1 = by0 + 1.0 / m;
                const double fx =
                    std::max(0.0, std::min(x1, bx1) - std::max(x0, bx0)) * m;
                const double fy =
                    std::max(0.0, std::min(y1, by1) - std::max(y0, by0)) * m;
                expect += fx * fy * bins[iy * m + ix];
            }
        }
        const double got = counter.count({x0, y0, x1, y1});
        REQUIRE(got == doctest::Approx(expect).epsilon(1e-9));
        // One-shot variant agrees with the cached counter.
        REQUIRE(wavelet_range_count(wt, {x0, y0, x1, y1}) ==
                doctest::Approx(got).epsilon(1e-12));
    }
}

TEST_CASE("wavelet noise is deterministic per seed and scales with levels") {
    const PointSet2D pts = demo_points();
    Rng a(5), b(5);
    const auto wa = wavelet_publish(pts, 6, 1.0, {0.0, 0.0, 1.0, 1.0}, a);
    const auto wb = wavelet_publish(pts, 6, 1.0, {0.0, 0.0, 1.0, 1.0}, b);
    CHECK(wa.coeffs == wb.coeffs);

    // Mean |noise| on detail coefficients ~ 2(q+1)/eps.
    Rng rng(29);
    const auto wt = wavelet_publish({}, 7, 1.0, {0.0, 0.0, 1.0, 1.0}, rng);
    double mean_abs = 0.0;
    for (std::size_t i = 1; i < wt.coeffs.size(); ++i) mean_abs += std::abs(wt.coeffs[i]);
    mean_abs /= static_cast<double>(wt.coeffs.size() - 1);
    CHECK(mean_abs == doctest::Approx(16.0).epsilon(0.05));
}

TEST_CASE("local sensitivity of the median") {
    CHECK(local_sensitivity_median({0.0, 0.5, 1.0}) == 0.5);
    CHECK(local_sensitivity_median({0.2, 0.2, 0.2}) == 0.0);
    CHECK(local_sensitivity_median({0.0, 0.1, 0.9, 1.0}) ==
          doctest::Approx(0.8).epsilon(1e-12));
    CHECK_THROWS_AS(local_sensitivity_median({0.5, 0.4, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(local_sensitivity_median({0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(local_sensitivity_median({0.0, 0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("smooth sensitivity equals an independent exhaustive computation") {
    // Oracle over an explicitly padded array: t+1 replacements can pull the
    // median to any window [m+j-t-1, m+j]; values below the data count as 0,
    // above as 1.
    auto oracle = [](const std::vector<double>& v, double eps) {
        const std::size_t n = v.size();
        std::vector<double> padded;
        padded.insert(padded.end(), n, 0.0);
        padded.insert(padded.end(), v.begin(), v.end());
        padded.insert(padded.end(), n, 1.0);
        const std::size_t m = n + (n - 1) / 2;
        double best = 0.0;
        for (std::size_t t = 0; t <= n; ++t) {
            double ls = 0.0;
            for (std::size_t j = 0; j <= t + 1; ++j) {
                ls = std::max(ls, padded[m + j] - padded[m + j - t - 1]);
            }
            best = std::max(best, std::exp(-eps * static_cast<double>(t)) * ls);
        }
        return best;
    };

    Rng rng(271);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 3 + rng.below(10);
        std::vector<double> v(n);
        for (auto& x : v) x = rng.below(11) / 10.0;
        std::sort(v.begin(), v.end());
        for (const double eps : {0.5, 1.0, 2.0}) {
            REQUIRE(smooth_sensitivity_of_median(v, eps) ==
                    doctest::Approx(oracle(v, eps)).epsilon(1e-12));
        }
    }
}

TEST_CASE("smooth sensitivity dominates local sensitivity and shrinks with epsilon") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng.below(30);
        std::vector<double> v(n);
        for (auto& x : v) x = rng.uniform01();
        std::sort(v.begin(), v.end());
        const double s1 = smooth_sensitivity_of_median(v, 0.5);
        const double s2 = smooth_sensitivity_of_median(v, 1.0);
        const double s3 = smooth_sensitivity_of_median(v, 2.0);
        const double ls = local_sensitivity_median(v);
        REQUIRE(s2 >= ls - 1e-15);
        REQUIRE(s1 >= s2 - 1e-15);
        REQUIRE(s2 >= s3 - 1e-15);
        REQUIRE(s2 <= 1.0 + 1e-15);
    }
}

TEST_CASE("smooth sensitivity on structured data") {
    // A 0/1 jump at the median keeps S = 1 regardless of epsilon.
    const std::vector<double> jump = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0};
    CHECK(smooth_sensitivity_of_median(jump, 1.0) == 1.0);
    CHECK(smooth_sensitivity_of_median(jump, 5.0) == 1.0);

    // Constant data: LS_0 = 0, but a few replacements reach the endpoints,
    // so S decays like exp(-eps t) but stays positive.
    const std::vector<double> constant(9, 0.5);
    const double s = smooth_sensitivity_of_median(constant, 1.0);
    CHECK(s > 0.0);
    CHECK(s < 1.0);
    CHECK(smooth_sensitivity_of_median(constant, 3.0) < s);
}

TEST_CASE("noisy median is the true median when noise is off") {
    const std::vector<double> v = {0.1, 0.2, 0.3, 0.4, 0.9};
    Rng rng(1);
    const auto res = smooth_sensitivity_median(v, 1.0, rng, /*add_noise=*/false);
    CHECK(res.noisy_median == 0.3);
    CHECK(res.smooth_sensitivity == smooth_sensitivity_of_median(v, 1.0));
    CHECK(res.epsilon == 1.0);

    Rng r1(4), r2(4);
    const auto a = smooth_sensitivity_median(v, 1.0, r1);
    const auto b = smooth_sensitivity_median(v, 1.0, r2);
    CHECK(a.noisy_median == b.noisy_median);
}

TEST_CASE("median benchmark data has a tunable local sensitivity") {
    Rng rng(515);
    const auto base = median_benchmark_data(rng);
    REQUIRE(base.size() == 129);
    CHECK(std::is_sorted(base.begin(), base.end()));
    CHECK(base.front() >= 0.0);
    CHECK(base.back() == 1.0);

    for (const double ls : {0.05, 0.2, 0.5}) {
        Rng r(99);
        const auto v = median_data_with_local_sensitivity(ls, r);
        REQUIRE(v.size() == 129);
        REQUIRE(std::is_sorted(v.begin(), v.end()));
        REQUIRE(local_sensitivity_median(v) == doctest::Approx(ls).epsilon(1e-12));
    }
}
