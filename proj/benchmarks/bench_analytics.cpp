#include <benchmark/benchmark.h>

#include <photonstat/analytics.hpp>
#include <photonstat/params.hpp>

namespace {

using photonstat::StateParams;
using photonstat::Variant;

void BM_Coefficients(benchmark::State& state) {
  const StateParams sp{1.0, 0.5, 2, Variant::Added};
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::coefficients(sp));
  }
}
BENCHMARK(BM_Coefficients);

void BM_NormPasts(benchmark::State& state) {
  const StateParams sp{1.0, 0.5, static_cast<int>(state.range(0)), Variant::Added};
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::norm_pasts(sp));
  }
}
BENCHMARK(BM_NormPasts)->Arg(2)->Arg(30);

void BM_PndTableAuto(benchmark::State& state) {
  const StateParams sp{1.0, 0.5, 2, Variant::Added};
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::pnd_table(sp));
  }
}
BENCHMARK(BM_PndTableAuto);

void BM_MeanPhotonNumber(benchmark::State& state) {
  const StateParams sp{2.0, -0.8, 1, Variant::Subtracted};
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::mean_photon_number(sp));
  }
}
BENCHMARK(BM_MeanPhotonNumber);

}  // namespace
