#include <benchmark/benchmark.h>

#include "bdmix/families.hpp"
#include "bdmix/hitting.hpp"

namespace {

void BM_BoundsReport(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kEhrenfest, static_cast<std::size_t>(state.range(0)), {}});
  const auto dist = bdmix::stationary(chain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdmix::bounds_report(chain, dist));
  }
}
BENCHMARK(BM_BoundsReport)->RangeMultiplier(8)->Range(64, 32768);

void BM_HardyCSweep(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kSimpleWalk, static_cast<std::size_t>(state.range(0)), {}});
  const auto dist = bdmix::stationary(chain);
  const auto nu = bdmix::chain_edge_weights(chain, dist);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= chain.n(); m += 16)
      acc += bdmix::hardy_C(dist, nu, m);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_HardyCSweep)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
