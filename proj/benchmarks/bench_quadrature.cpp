#include <benchmark/benchmark.h>

#include "bellcert/quadrature.hpp"
#include "bellcert/relent.hpp"

static void GaussRadauRule(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rule = bellcert::relent::gauss_radau(m, 1);
    benchmark::DoNotOptimize(rule.nodes.data());
  }
}
BENCHMARK(GaussRadauRule)->Arg(1)->Arg(3)->Arg(5)->Arg(8);

static void ScalarLogBound(benchmark::State& state) {
  const bellcert::relent::CvneApproxConfig cfg(3, 3, -1);
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bellcert::relent::scalar_log_bound(x, cfg));
    x = x < 100 ? x * 1.618 : 0.37;
  }
}
BENCHMARK(ScalarLogBound);
