#include <benchmark/benchmark.h>

#include "etaq/congruence.hpp"
#include "etaq/eisenstein.hpp"
#include "etaq/filtration.hpp"

using namespace etaq;

namespace {

void BM_FiltrationDelta(benchmark::State& state) {
  const Prime ell(static_cast<std::int64_t>(state.range(0)));
  const auto d = delta(200).series;
  for (auto _ : state) benchmark::DoNotOptimize(filtration(pow(d, 8), 96, ell));
}
BENCHMARK(BM_FiltrationDelta)->Arg(5)->Arg(11);

void BM_ThetaCycleF(benchmark::State& state) {
  const std::int64_t l = state.range(0);
  const Prime ell(l);
  const std::int64_t k = l * l - 1;
  const auto F = build_F(ProductSpec::parse("1^-2"), ell, level1_sturm_bound(2 * k) + 4);
  for (auto _ : state) benchmark::DoNotOptimize(theta_cycle(F.series, F.weight, ell));
}
BENCHMARK(BM_ThetaCycleF)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_CertifyFixpoint(benchmark::State& state) {
  const auto spec = ProductSpec::parse("1^-1 2^-1");
  const Prime ell(static_cast<std::int64_t>(state.range(0)));
  const auto a = forced_residue(spec, ell);
  for (auto _ : state) benchmark::DoNotOptimize(certify(spec, ell, a));
}
BENCHMARK(BM_CertifyFixpoint)->Arg(13)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_cN(2, state.range(0), 5000));
}
BENCHMARK(BM_Classify)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
