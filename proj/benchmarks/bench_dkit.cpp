#include <benchmark/benchmark.h>

#include "dkit/commutator.hpp"
#include "dkit/discrepancy.hpp"
#include "dkit/grid_oracle.hpp"
#include "dkit/matcore.hpp"
#include "dkit/rng.hpp"
#include "dkit/xdecomp.hpp"

using namespace dkit;

namespace {

ComplexMatrix general(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_ginibre(n, n, rng);
}

ComplexMatrix hermitian(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_hermitian(n, rng);
}

void BM_KyFanNorm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = general(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ky_fan_norm(a, n / 2 + 1));
}
BENCHMARK(BM_KyFanNorm)->Arg(4)->Arg(16)->Arg(64);

void BM_DiscrepancyNormGeneral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = general(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_norm(a, 1).value);
}
BENCHMARK(BM_DiscrepancyNormGeneral)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_DiscrepancyValuesGeneral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = general(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_values(a).partial_norms);
}
BENCHMARK(BM_DiscrepancyValuesGeneral)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DiscrepancyValuesHermitian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = hermitian(n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_values(a).partial_norms);
}
BENCHMARK(BM_DiscrepancyValuesHermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_DiscrepancyValuesNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  const ComplexMatrix q = random_unitary(n, rng);
  ComplexVector d(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = rng.complex_normal();
  const ComplexMatrix a = q * d.asDiagonal() * q.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy_values(a).partial_norms);
}
BENCHMARK(BM_DiscrepancyValuesNormal)->Arg(4)->Arg(16)->Arg(64);

void BM_GridOracle(benchmark::State& state) {
  const ComplexMatrix a = general(3, 6);
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_oracle_discrepancy_norm(a, 2, res).value);
}
BENCHMARK(BM_GridOracle)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MaximalNoncommuting(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = hermitian(n, 7), b = hermitian(n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(maximal_noncommuting_unitary(a, b).u);
}
BENCHMARK(BM_MaximalNoncommuting)->Arg(4)->Arg(16)->Arg(64);

void BM_XDecomposition(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = hermitian(n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(x_decomposition(a).x);
}
BENCHMARK(BM_XDecomposition)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
