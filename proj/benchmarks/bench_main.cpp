#include <benchmark/benchmark.h>

#include <cmath>

#include "singfront/bounds.hpp"
#include "singfront/expr.hpp"
#include "singfront/front.hpp"
#include "singfront/shooting.hpp"
#include "singfront/speed.hpp"

namespace {

using namespace singfront;

void BM_ParseEval(benchmark::State& state) {
  for (auto _ : state) {
    const Expr e = parse("u^2 * (1 - u) + sqrt(u) * exp(-u)");
    benchmark::DoNotOptimize(e(0.37));
  }
}
BENCHMARK(BM_ParseEval);

void BM_Eval(benchmark::State& state) {
  const Expr e = parse("u * (1 - u)");
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e(u));
    u = u < 0.9 ? u + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_Eval);

void BM_Bounds(benchmark::State& state) {
  const ProblemSpec spec = make_spec(1, "u", "1 - u", "u * (1 - u)");
  for (auto _ : state) benchmark::DoNotOptimize(estimate(spec).upper);
}
BENCHMARK(BM_Bounds)->Unit(benchmark::kMillisecond);

void BM_ShootFisher(benchmark::State& state) {
  const ProblemSpec spec = make_spec(1, "0", "1", "u * (1 - u)");
  const EndLimits limits = end_limits(spec);
  const double c = 5.0 / std::sqrt(6.0);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(spec, c, limits).z_at_umin);
}
BENCHMARK(BM_ShootFisher)->Unit(benchmark::kMicrosecond);

void BM_ShootExample1(benchmark::State& state) {
  const ProblemSpec spec = make_spec(2, "0", "u + 1", "u^2 * (1 - u)");
  const EndLimits limits = end_limits(spec);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(spec, 2.5, limits).z_at_umin);
}
BENCHMARK(BM_ShootExample1)->Unit(benchmark::kMicrosecond);

void BM_CriticalSpeedExample2(benchmark::State& state) {
  const ProblemSpec spec = make_spec(1, "u", "1 - u", "u * (1 - u)");
  for (auto _ : state) benchmark::DoNotOptimize(critical_speed(spec, 1e-6).c_star);
}
BENCHMARK(BM_CriticalSpeedExample2)->Unit(benchmark::kMillisecond);

void BM_Profile(benchmark::State& state) {
  const ProblemSpec spec = make_spec(1, "0", "1", "u * (1 - u)");
  const Trajectory t = shoot(spec, 5.0 / std::sqrt(6.0));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(t, spec).samples.size());
}
BENCHMARK(BM_Profile)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
