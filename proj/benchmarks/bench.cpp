#include <benchmark/benchmark.h>

#include <complex>

#include "zmc/analysis.hpp"
#include "zmc/chebyshev.hpp"
#include "zmc/extension.hpp"
#include "zmc/meshio.hpp"
#include "zmc/weierstrass.hpp"

namespace {

void BM_EvalExtended(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  double th = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(zmc::eval_extended(n, 1.7, th));
    th += 1e-3;
    if (th > 6.0) th = 0.1;
  }
}
BENCHMARK(BM_EvalExtended)->Arg(3)->Arg(8)->Arg(17);

void BM_InvertT(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  double y = -0.9;
  for (auto _ : st) {
    benchmark::DoNotOptimize(zmc::chebyshev::invert_T(n, y));
    y += 0.01;
    if (y > 50.0) y = -0.9;
  }
}
BENCHMARK(BM_InvertT)->Arg(3)->Arg(8);

void BM_LiftClosedForm(benchmark::State& st) {
  const zmc::JorgeMeeksData d(static_cast<int>(st.range(0)));
  const std::complex<double> z(0.3, 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(zmc::lift_closed_form(d, z));
}
BENCHMARK(BM_LiftClosedForm)->Arg(3)->Arg(8);

void BM_LiftQuadrature(benchmark::State& st) {
  const zmc::JorgeMeeksData d(static_cast<int>(st.range(0)));
  const std::complex<double> z(0.3, 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(zmc::integrate_lift_numeric(d, z));
}
BENCHMARK(BM_LiftQuadrature)->Arg(3)->Arg(8);

void BM_LevelCurve(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(zmc::analysis::level_curve(6, 1.0, 2048));
}
BENCHMARK(BM_LevelCurve);

void BM_Tessellate(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(zmc::meshio::tessellate(3, 3.0, 0.02, 64, 192));
}
BENCHMARK(BM_Tessellate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
