#include <benchmark/benchmark.h>

#include <memory>

#include "cgkit/curvature_tests.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/gh.hpp"
#include "cgkit/model_space.hpp"
#include "cgkit/sampled_manifold.hpp"

namespace {

using namespace cgkit;

void BM_ComparisonAngle(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0)) - 1.0;
  double a = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model::comparison_angle(a, 0.4, 0.5, model::ModelCurvature{k}));
    a = a < 0.6 ? a + 1e-6 : 0.3;
  }
}
BENCHMARK(BM_ComparisonAngle)->Arg(0)->Arg(1)->Arg(2);

void BM_ArcLengthFromChord(benchmark::State& state) {
  double r = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model::arc_length_from_chord({r, 1.0, model::ModelCurvature{-1.0}}));
    r = r < 1.0 ? r + 1e-5 : 0.01;
  }
}
BENCHMARK(BM_ArcLengthFromChord);

// All-pairs shortest paths on a planar disc sample.
void BM_IntrinsicMetric(benchmark::State& state) {
  const SampledManifold m = planar_disc(1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(intrinsic_metric(m).size());
  state.counters["points"] = static_cast<double>(m.size());
}
BENCHMARK(BM_IntrinsicMetric)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_EpsNet(benchmark::State& state) {
  const SampledManifold m = icosphere(4);
  for (auto _ : state) benchmark::DoNotOptimize(manifold_eps_net(m, 0.3).size());
}
BENCHMARK(BM_EpsNet)->Unit(benchmark::kMillisecond);

void BM_HausdorffApprox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto X = std::make_shared<const FiniteMetricSpace>(circle_space(n, 1.0));
  auto Y = std::make_shared<const FiniteMetricSpace>(circle_space(n / 2, 1.05));
  for (auto _ : state) benchmark::DoNotOptimize(search_approx(X, Y).epsilon());
}
BENCHMARK(BM_HausdorffApprox)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_QuadrupleTest(benchmark::State& state) {
  const FiniteMetricSpace X = flat_grid(12, 0.1);
  SamplingOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cbb_quadruple_test(X, 0.0, o).worst);
}
BENCHMARK(BM_QuadrupleTest)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
