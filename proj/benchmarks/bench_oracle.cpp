#include <benchmark/benchmark.h>

#include <photonstat/fock_oracle.hpp>
#include <photonstat/params.hpp>

namespace {

using photonstat::StateParams;
using photonstat::Variant;

void BM_SqueezeMatrix(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::squeeze_matrix(0.8, dim));
  }
}
BENCHMARK(BM_SqueezeMatrix)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_OracleNorm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const StateParams sp{1.0, 0.5, 2, Variant::Added};
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::oracle_norm(sp, dim));
  }
}
BENCHMARK(BM_OracleNorm)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TfdPurification(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(photonstat::tfd_purification_check(1.0, dim));
  }
}
BENCHMARK(BM_TfdPurification)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
