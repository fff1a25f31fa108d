// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "steklov/extension.hpp"
#include "steklov/kernels.hpp"
#include "steklov/lu.hpp"
#include "steklov/operators.hpp"
#include "steklov/steklov.hpp"

using namespace steklov;

namespace {

RealMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng) + (i == j ? static_cast<double>(n) : 0.0);
  return m;
}

const BoundaryCurve& kite() {
  static const BoundaryCurve c = make_builtin("kite", {}, DomainKind::BoundedInterior);
  return c;
}

void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::multiply(a, b));
}

void BM_GemmReference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const RealMatrix a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::multiply(a, b));
}

void BM_Lu(benchmark::State& state) {
  const RealMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(LuFactorization(a));
}

void BM_LuReference(benchmark::State& state) {
  const RealMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(LuFactorization::reference(a));
}

void BM_Nystrom(benchmark::State& state) {
  const Grid g = Grid::build(kite(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nystrom_matrices(g, kite()));
}

void BM_NystromReference(benchmark::State& state) {
  const Grid g = Grid::build(kite(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::nystrom_matrices(g, kite()));
}

void BM_AssembleQ(benchmark::State& state) {
  const DtnDiscretization dtn(kite(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_q(dtn));
}

void BM_AssembleQReference(benchmark::State& state) {
  const DtnDiscretization dtn(kite(), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::assemble_q(dtn));
}

BoundaryFunction cauchy_data() {
  const Grid g = Grid::build(kite(), 512);
  ComplexVector v(g.n);
  for (std::size_t j = 0; j < g.n; ++j) v[j] = std::exp(g.eta[j]);
  return BoundaryFunction::make(g, DomainKind::BoundedInterior, std::move(v));
}

ComplexVector cauchy_points(std::size_t m) {
  ComplexVector z(m);
  for (std::size_t i = 0; i < m; ++i)
    z[i] = complex(-0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(m), 0.1);
  return z;
}

void BM_Cauchy(benchmark::State& state) {
  const BoundaryFunction bf = cauchy_data();
  const ComplexVector z = cauchy_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_eval(bf, z));
}

void BM_CauchyReference(benchmark::State& state) {
  const BoundaryFunction bf = cauchy_data();
  const ComplexVector z = cauchy_points(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::cauchy_eval(bf, z));
}

}  // namespace

BENCHMARK(BM_Gemm)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GemmReference)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lu)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LuReference)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Nystrom)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NystromReference)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleQ)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleQReference)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Cauchy)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CauchyReference)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
