#include <benchmark/benchmark.h>

#include "bellcert/bell.hpp"
#include "bellcert/certify.hpp"

using namespace bellcert;

static void Method2Chsh(benchmark::State& state) {
  const auto spec = bell::builtin_spec("chsh");
  const int mk = static_cast<int>(state.range(0));
  const relent::CvneApproxConfig cfg(mk, mk, +1);
  for (auto _ : state) {
    auto r = certify::method2_fixed_measurements(spec, -0.5, cfg);
    benchmark::DoNotOptimize(r.omega);
  }
}
BENCHMARK(Method2Chsh)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void TsirelsonFixedAngles(benchmark::State& state) {
  const auto spec = bell::builtin_spec("bc3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify::tsirelson_check(spec));
  }
}
BENCHMARK(TsirelsonFixedAngles)->Unit(benchmark::kMillisecond);
