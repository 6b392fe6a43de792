#include <benchmark/benchmark.h>

#include "hktred/catalog.hpp"
#include "hktred/kt_hkt.hpp"
#include "hktred/reduction.hpp"
#include "hktred/sampling.hpp"

using namespace hktred;

static void BM_ReducedMetricTaubNut(benchmark::State& state) {
  const ReductionSetup s = taub_nut_setup(1.0);
  const auto ls = level_samples(1, 7, 16);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_metric_at(s, s.level_point(ls[i++ % ls.size()])).g);
  }
}
BENCHMARK(BM_ReducedMetricTaubNut);

static void BM_ReducedMetricLwy(benchmark::State& state) {
  Mat l = Mat::Zero(2, 2);
  l(0, 0) = 1.0;
  l(1, 1) = 2.0;
  const ReductionSetup s = lwy_setup(l);
  const auto ls = level_samples(2, 7, 16);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_metric_at(s, s.level_point(ls[i++ % ls.size()])).g);
  }
}
BENCHMARK(BM_ReducedMetricLwy);

static void BM_HktResidualConformal(benchmark::State& state) {
  const auto hh = with_constant_structure(metric_field(ConformalH{{{1.0, 0.0, 1.0}}}), HypercomplexTriple::standard(2));
  const auto pts = ambient_domain(1, 7, 16).samples();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hkt_residual_at(hh, pts[i++ % pts.size()]));
}
BENCHMARK(BM_HktResidualConformal);

static void BM_StrongResidual(benchmark::State& state) {
  const ReductionSetup s = taub_nut_setup(1.0);
  const auto hh = quotient_pair(s, metric_field(StrongTN{1.0}));
  const auto pts = quotient_points(s, level_samples(1, 7, 1));
  for (auto _ : state) benchmark::DoNotOptimize(strong_residual(hh, pts).value);
}
BENCHMARK(BM_StrongResidual)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
