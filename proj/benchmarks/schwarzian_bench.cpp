#include <random>

#include <benchmark/benchmark.h>

#include "schwarzian/disconjugacy.hpp"
#include "schwarzian/expr.hpp"
#include "schwarzian/ode.hpp"
#include "schwarzian/partitions.hpp"
#include "schwarzian/schwarzian.hpp"

using namespace schwarzian;

namespace {

Jet sample_jet(int order) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  std::vector<Complex> c(order + 1);
  for (auto& x : c) x = {n(rng), n(rng)};
  c[0] = 3.0;
  return Jet::from_coefficients(Complex(0.2, 0.1), 0, c);
}

}  // namespace

static void BM_JetMultiply(benchmark::State& state) {
  const Jet a = sample_jet(state.range(0)), b = sample_jet(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JetMultiply)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_JetDivide(benchmark::State& state) {
  const Jet a = sample_jet(state.range(0)), b = sample_jet(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a / b);
}
BENCHMARK(BM_JetDivide)->RangeMultiplier(2)->Range(8, 128);

static void BM_JetExp(benchmark::State& state) {
  const Jet a = sample_jet(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp(a));
}
BENCHMARK(BM_JetExp)->RangeMultiplier(2)->Range(8, 128);

static void BM_SchwarzianRecursive(benchmark::State& state) {
  const JetSource f = as_source(parse("exp(z^2 + z)/(2 + z)"));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(schwarzian_recursive(f, k, Complex(0.3, 0.2)));
}
BENCHMARK(BM_SchwarzianRecursive)->DenseRange(2, 12, 2);

static void BM_SchwarzianClosedForm(benchmark::State& state) {
  const JetSource f = as_source(parse("exp(z^2 + z)/(2 + z)"));
  const int k = static_cast<int>(state.range(0));
  closed_form_terms(k);  // table built outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(schwarzian_closed_form(f, k, Complex(0.3, 0.2)));
}
BENCHMARK(BM_SchwarzianClosedForm)->DenseRange(2, 12, 2);

static void BM_PartitionTable(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (const auto& t : enumerate_partitions(k)) benchmark::DoNotOptimize(closed_form_coefficient(t));
  }
}
BENCHMARK(BM_PartitionTable)->DenseRange(4, 16, 4);

static void BM_OdeIntegrate(benchmark::State& state) {
  const FunctionExpr p0 = parse("1 + z^2");
  const int k = static_cast<int>(state.range(0));
  const std::vector<Complex> path = {0.0, Complex(1.0, 0.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(p0, k, OdeState(static_cast<std::size_t>(k), 1.0), path));
  }
}
BENCHMARK(BM_OdeIntegrate)->DenseRange(2, 6, 2);

static void BM_CountZeros(benchmark::State& state) {
  const JetSource y = as_source(parse("(z - 0.1)*(z + 0.2i)*(z - 0.3 - 0.3i)*exp(z)"));
  const ConvexRegion region = ConvexRegion::disk(0.0, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(count_zeros(y, region));
}
BENCHMARK(BM_CountZeros);

static void BM_CountZerosOdeSolution(benchmark::State& state) {
  const FunctionExpr p0 = FunctionExpr::constant(4.0);
  for (auto _ : state) {
    OdeSolution y(p0, 2, 0.0, {0.3, 1.0});
    benchmark::DoNotOptimize(count_zeros(y.source(), ConvexRegion::square(0.0, 1.0)));
  }
}
BENCHMARK(BM_CountZerosOdeSolution);

BENCHMARK_MAIN();
