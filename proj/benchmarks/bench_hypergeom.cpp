#include <benchmark/benchmark.h>

#include "heegner/hypergeom.hpp"
#include "heegner/identities.hpp"
#include "heegner/modular.hpp"

using namespace heegner;

static void BM_DirectSeries(benchmark::State& state) {
  const PrecisionContext ctx = make_context(state.range(0));
  const HypParams p{mpq_class(1, 12), mpq_class(5, 12), 1};
  const Complex z(mpq_class(27, 125), ctx.working_bits());
  for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(p, z, ctx));
}
BENCHMARK(BM_DirectSeries)->Arg(100)->Arg(300)->Arg(1000);

static void BM_ConnectionNearOne(benchmark::State& state) {
  const PrecisionContext ctx = make_context(state.range(0));
  const HypParams p{mpq_class(1, 12), mpq_class(7, 12), mpq_class(2, 3)};
  const Complex z(mpq_class(mpz_class("151931373056000"), mpz_class("151931373056001")), ctx.working_bits());
  for (auto _ : state) benchmark::DoNotOptimize(gauss_2f1(p, z, ctx));
}
BENCHMARK(BM_ConnectionNearOne)->Arg(100)->Arg(300)->Arg(1000);

static void BM_KleinJ(benchmark::State& state) {
  const PrecisionContext ctx = make_context(state.range(0));
  const TauPoint tau = HeegnerPoint{1, 1, 41}.tau();
  for (auto _ : state) benchmark::DoNotOptimize(klein_J(tau, ctx));
}
BENCHMARK(BM_KleinJ)->Arg(100)->Arg(300);

static void BM_VerifyRecord(benchmark::State& state) {
  const PrecisionContext ctx = make_context(300);
  const IdentityRecord* r = find_record("zero.halfint-163");
  for (auto _ : state) benchmark::DoNotOptimize(verify_record(*r, ctx));
}
BENCHMARK(BM_VerifyRecord)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
