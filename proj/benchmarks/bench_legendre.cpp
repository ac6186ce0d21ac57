#include <benchmark/benchmark.h>

#include <photonstat/legendre.hpp>

namespace {

void BM_LegendreP(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::legendre_p(m, 1.73));
  }
}
BENCHMARK(BM_LegendreP)->Arg(10)->Arg(100)->Arg(1000);

void BM_ScaledSequence(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto w = photonstat::scaled_sequence(4.0, 1.0, order);
    benchmark::DoNotOptimize(w.log_abs(order));
  }
  state.SetItemsProcessed(state.iterations() * order);
}
BENCHMARK(BM_ScaledSequence)->Arg(50)->Arg(500)->Arg(2000);

void BM_GenfunPartialSum(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::genfun_partial_sum(0.5, 0.25, 0.4, 200));
  }
}
BENCHMARK(BM_GenfunPartialSum);

}  // namespace
