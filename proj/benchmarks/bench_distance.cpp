#include <benchmark/benchmark.h>

#include "bdmix/distance.hpp"
#include "bdmix/families.hpp"

namespace {

void BM_ContinuousProfilePoint(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kSimpleWalk, static_cast<std::size_t>(state.range(0)), {}});
  const double t = static_cast<double>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bdmix::tv_profile_continuous(chain, {t}));
  }
}
BENCHMARK(BM_ContinuousProfilePoint)
    ->Args({64, 1000})
    ->Args({128, 10000})
    ->Args({256, 100000});

void BM_MixingTimeContinuous(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kEhrenfest, static_cast<std::size_t>(state.range(0)), {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdmix::mixing_time(chain, 0.1, bdmix::TimeMode::continuous()));
  }
}
BENCHMARK(BM_MixingTimeContinuous)->Arg(32)->Arg(64)->Arg(128);

void BM_MixingTimeLazy(benchmark::State& state) {
  const auto chain = bdmix::build(
      {bdmix::FamilyKind::kEhrenfest, static_cast<std::size_t>(state.range(0)), {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdmix::mixing_time(chain, 0.1, bdmix::TimeMode::lazy(0.5)));
  }
}
BENCHMARK(BM_MixingTimeLazy)->Arg(32)->Arg(64)->Arg(128);

}  // namespace
