#include <benchmark/benchmark.h>

#include <vector>

#include "privpoints/hilbert.hpp"
#include "privpoints/rng.hpp"

namespace {

using namespace privpoints;

void BM_forward_map(benchmark::State& state) {
    HilbertConfig cfg;
    cfg.order = static_cast<int>(state.range(0));
    Rng rng(7);
    PointSet2D pts(100000);
    for (auto& p : pts) p = {rng.uniform01(), rng.uniform01()};
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_dataset(cfg, pts));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_forward_map)->Arg(8)->Arg(10)->Arg(16);

void BM_inverse_map(benchmark::State& state) {
    HilbertConfig cfg;
    cfg.order = static_cast<int>(state.range(0));
    Rng rng(7);
    std::vector<double> values(100000);
    for (auto& v : values) v = rng.uniform01();
    for (auto _ : state) {
        benchmark::DoNotOptimize(inverse_map(cfg, values));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(values.size()));
}
BENCHMARK(BM_inverse_map)->Arg(10)->Arg(16);

}  // namespace
