#include <benchmark/benchmark.h>

#include "iwasawa/curve.hpp"
#include "iwasawa/dirichlet.hpp"
#include "iwasawa/lvalues.hpp"
#include "iwasawa/measure.hpp"
#include "iwasawa/mtt.hpp"
#include "iwasawa/selfcheck.hpp"

using namespace iwasawa;

static void BM_Coefficients(benchmark::State& st) {
  CurveData E(reference_curve("37a1"));
  for (auto _ : st) benchmark::DoNotOptimize(an_coeffs(E, st.range(0)));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Coefficients)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_TwistedLevel(benchmark::State& st) {
  for (auto _ : st) {
    LFunction L(CurveData(reference_curve("11a1")));
    benchmark::DoNotOptimize(L.twisted_level(5, static_cast<int>(st.range(0))));
  }
}
BENCHMARK(BM_TwistedLevel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Tau(benchmark::State& st) {
  long p = 5;
  int n = static_cast<int>(st.range(0));
  LevelElement<PadicNumber> mu(p, n, PadicNumber::exact_zero(p));
  for (long c = 0; c < mu.modulus(); ++c) mu[c] = PadicNumber::from_integer(p, c * c - 7, 20);
  for (auto _ : st) benchmark::DoNotOptimize(tau(mu, 6));
}
BENCHMARK(BM_Tau)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

static void BM_MeasureConstruction(benchmark::State& st) {
  LFunction L(CurveData(reference_curve("11a1")));
  L.twisted_level(5, 1);
  L.twisted_level(5, 2);
  for (auto _ : st) benchmark::DoNotOptimize(mtt_measure(L, 5, 1, 6));
}
BENCHMARK(BM_MeasureConstruction)->Unit(benchmark::kMillisecond);

static void BM_Convolution(benchmark::State& st) {
  long N = st.range(0);
  FormalDirichletSeries<Rational> A(N, 5), B(N, 5);
  for (long n = 1; n <= N; ++n)
    if (n % 5) {
      A.set(n, Rational(n % 7 - 3));
      B.set(n, Rational(n % 11 - 5));
    }
  for (auto _ : st) benchmark::DoNotOptimize(A * B);
}
BENCHMARK(BM_Convolution)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
