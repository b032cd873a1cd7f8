#include <benchmark/benchmark.h>

#include <random>

#include "etaq/expand.hpp"
#include "etaq/series.hpp"

using namespace etaq;

namespace {

TruncatedSeries random_series(std::size_t n, std::optional<Prime> p, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(0, p ? p->signed_value() - 1 : 1'000'000'000);
  std::vector<std::int64_t> c(n);
  for (auto& x : c) x = dist(rng);
  return TruncatedSeries::from_ints(0, c, p);
}

void BM_MulResidues(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Prime p(2147483647);
  const auto a = random_series(n, p, 1);
  const auto b = random_series(n, p, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulResidues)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_MulIntegers(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_series(n, std::nullopt, 1);
  const auto b = random_series(n, std::nullopt, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MulIntegers)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_PartitionsExact(benchmark::State& state) {
  const auto spec = ProductSpec::parse("1^-1");
  for (auto _ : state) benchmark::DoNotOptimize(expand_product(spec, state.range(0)));
}
BENCHMARK(BM_PartitionsExact)->Arg(1000)->Arg(10000);

void BM_ExpandModL(benchmark::State& state) {
  // Large exponents as in the l^2 - 1 powers of the Delta-product forms.
  const auto spec = ProductSpec::parse("1^528 2^528");
  const Prime ell(23);
  for (auto _ : state) benchmark::DoNotOptimize(expand_product(spec, state.range(0), ell));
}
BENCHMARK(BM_ExpandModL)->Arg(10000)->Arg(100000);

void BM_ExpandLogDerivative(benchmark::State& state) {
  const auto spec = ProductSpec::parse("1^-48 2^48 7^-3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand_product(spec, state.range(0), std::nullopt, ExpansionMethod::log_derivative));
  }
}
BENCHMARK(BM_ExpandLogDerivative)->Arg(500)->Arg(2000);

}  // namespace
