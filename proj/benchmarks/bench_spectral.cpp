#include <benchmark/benchmark.h>

#include "bdmix/families.hpp"
#include "bdmix/spectral.hpp"

namespace {

void BM_EigenvaluesSimpleWalk(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kSimpleWalk, static_cast<std::size_t>(state.range(0)), {}});
  const auto dist = bdmix::stationary(chain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdmix::eigenvalues(chain, dist));
  }
}
BENCHMARK(BM_EigenvaluesSimpleWalk)->RangeMultiplier(4)->Range(64, 4096);

void BM_EigenvaluesEhrenfest(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kEhrenfest, static_cast<std::size_t>(state.range(0)), {}});
  const auto dist = bdmix::stationary(chain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdmix::eigenvalues(chain, dist));
  }
}
BENCHMARK(BM_EigenvaluesEhrenfest)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace
