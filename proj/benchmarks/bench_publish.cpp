#include <benchmark/benchmark.h>

#include "privpoints/estimators.hpp"
#include "privpoints/mechanism.hpp"
#include "privpoints/pointset.hpp"
#include "privpoints/reconstruct.hpp"
#include "privpoints/rng.hpp"

namespace {

using namespace privpoints;

PointSet2D make_points(std::size_t n) {
    Rng rng(11);
    return clustered_points(n, 5, 0.05, {0.0, 0.0, 1.0, 1.0}, rng);
}

void BM_publish(benchmark::State& state) {
    const auto pts = make_points(static_cast<std::size_t>(state.range(0)));
    HilbertConfig cfg;
    Rng rng(5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(publish(pts, 1.0, 30, cfg, rng));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            state.range(0));
}
BENCHMARK(BM_publish)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_reconstruct(benchmark::State& state) {
    const auto pts = make_points(static_cast<std::size_t>(state.range(0)));
    HilbertConfig cfg;
    Rng rng(5);
    const Release rel = publish(pts, 1.0, 30, cfg, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct(rel));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            state.range(0));
}
BENCHMARK(BM_reconstruct)->Arg(10000)->Arg(100000);

void BM_range_query(benchmark::State& state) {
    const auto pts = make_points(100000);
    HilbertConfig cfg;
    Rng rng(5);
    const Release rel = publish(pts, 1.0, 30, cfg, rng);
    const Reconstruction rec = reconstruct(rel);
    const DensityEstimate density = density_from_values(rec.values);
    Rng qrng(9);
    for (auto _ : state) {
        const double w = 0.03 * qrng.uniform01();
        const double x0 = qrng.uniform01() * (1.0 - w);
        const double y0 = qrng.uniform01() * (1.0 - w);
        benchmark::DoNotOptimize(
            range_count(density, {x0, y0, x0 + w, y0 + w}, cfg, rel.point_count()));
    }
}
BENCHMARK(BM_range_query);

}  // namespace
