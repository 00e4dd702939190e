#include <benchmark/benchmark.h>

#include "lpmahler/harness.hpp"

using namespace lpm;

namespace {

Body hexagon() { return random_body({1, 3, true, Generator::CIRCLE_HULL}); }
Body heptagon() { return random_body({2, 7, false, Generator::CIRCLE_HULL}); }

void BM_HpEval(benchmark::State& state) {
  const LpSupportEval ev = build_support(heptagon(), 2.0);
  double y = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ev.h({1.0 + y, 0.7 - y}));
    y = -y;
  }
}
BENCHMARK(BM_HpEval);

void BM_PolarVolume(benchmark::State& state) {
  const QuadConfig q;
  const LpSupportEval ev = build_support(hexagon(), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(polar_volume(ev, q));
}
BENCHMARK(BM_PolarVolume);

void BM_Santalo(benchmark::State& state) {
  const QuadConfig q;
  const Body b = heptagon();
  for (auto _ : state) benchmark::DoNotOptimize(santalo_point(b, 1.0, q).point);
}
BENCHMARK(BM_Santalo);

void BM_Covariance(benchmark::State& state) {
  const Body b = heptagon();
  for (auto _ : state) benchmark::DoNotOptimize(covariance(b).det());
}
BENCHMARK(BM_Covariance);

void BM_ReduceOnceSymmetric(benchmark::State& state) {
  const QuadConfig q;
  const Body b = hexagon();
  for (auto _ : state) benchmark::DoNotOptimize(reduce_once(b, 2.0, q).second.chosen.size());
}
BENCHMARK(BM_ReduceOnceSymmetric);

}  // namespace

BENCHMARK_MAIN();
