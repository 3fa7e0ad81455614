#include <benchmark/benchmark.h>

#include "bellcert/quantum.hpp"
#include "bellcert/relent.hpp"
#include "bellcert/rng.hpp"

using namespace bellcert;

static void CvneExact(benchmark::State& state) {
  Rng rng(1);
  const int d = static_cast<int>(state.range(0));
  const auto st = quantum::ginibre_state(d, d, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum::cvne_exact(st));
  }
}
BENCHMARK(CvneExact)->Arg(2)->Arg(3);

static void CvneQuadratureValue(benchmark::State& state) {
  Rng rng(2);
  const int d = static_cast<int>(state.range(0));
  const auto st = quantum::ginibre_state(d, d, rng);
  const relent::CvneApproxConfig cfg(3, 3, -1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(relent::cvne_quadrature_value(st, cfg));
  }
}
BENCHMARK(CvneQuadratureValue)->Arg(2)->Arg(3);
