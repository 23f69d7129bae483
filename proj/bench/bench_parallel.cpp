// Serial reference path against the OpenMP path on the heavy kernels.
// Arg 0 = Serial, 1 = OpenMP.

#include <benchmark/benchmark.h>

#include <cmath>

#include "confext/constants.hpp"
#include "confext/operators.hpp"
#include "confext/parallel.hpp"
#include "confext/quadrature.hpp"
#include "confext/sweep.hpp"

using namespace confext;

namespace {

struct ExecGuard {
  Exec saved = default_exec();
  explicit ExecGuard(const benchmark::State& st) {
    set_default_exec(st.range(0) == 0 ? Exec::Serial : Exec::OpenMP);
  }
  ~ExecGuard() { set_default_exec(saved); }
};

void BM_BallIntegrate(benchmark::State& st) {
  ExecGuard g(st);
  auto rule = ball_rule(3, static_cast<int>(st.range(1)), kNormGrading);
  for (auto _ : st) {
    double v = integrate(*rule, [](const Node& x) { return std::exp(x.x[0]) * std::pow(x.gap, -0.25); }).value;
    benchmark::DoNotOptimize(v);
  }
  st.counters["nodes"] = static_cast<double>(rule->size());
}

void BM_SharpConstant(benchmark::State& st) {
  ExecGuard g(st);
  ParamTriple P = make_params(3, 1, 0);
  for (auto _ : st) benchmark::DoNotOptimize(sharp_constant_Ce(P, static_cast<int>(st.range(1))).value);
}

void BM_RayleighQuotient(benchmark::State& st) {
  ExecGuard g(st);
  ParamTriple P = make_params(3, 0, 1);
  ExponentSet E = conformal_exponents(P);
  auto f = TrialFunction::perturbed(1.0, {{2, 0.2}}, Vec::unit(3, 0));
  for (auto _ : st)
    benchmark::DoNotOptimize(rayleigh_quotient(f, P, E.p, E.s, static_cast<int>(st.range(1))));
}

}  // namespace

BENCHMARK(BM_BallIntegrate)->ArgsProduct({{0, 1}, {8, 12}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SharpConstant)->ArgsProduct({{0, 1}, {8, 10}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RayleighQuotient)->ArgsProduct({{0, 1}, {4, 5}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
