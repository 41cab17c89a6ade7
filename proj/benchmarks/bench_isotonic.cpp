#include <benchmark/benchmark.h>

#include <vector>

#include "privpoints/isotonic.hpp"
#include "privpoints/rng.hpp"

namespace {

using namespace privpoints;

std::vector<double> noisy_ramp(std::size_t n, double noise) {
    Rng rng(3);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = static_cast<double>(i) / static_cast<double>(n) +
               noise * rng.uniform_symmetric();
    }
    return v;
}

void BM_isotonic_l2(benchmark::State& state) {
    const auto data = noisy_ramp(static_cast<std::size_t>(state.range(0)), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(isotonic_l2(data));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            state.range(0));
}
BENCHMARK(BM_isotonic_l2)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_isotonic_l1(benchmark::State& state) {
    const auto data = noisy_ramp(static_cast<std::size_t>(state.range(0)), 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(isotonic_l1(data));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            state.range(0));
}
BENCHMARK(BM_isotonic_l1)->Arg(1000)->Arg(100000);

}  // namespace
