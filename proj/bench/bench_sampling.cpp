// Compares the OpenMP sampling kernel against the serial reference and tracks
// the cost of the analytical fold.
#include <benchmark/benchmark.h>

#include "statpipe/sampling.hpp"
#include "statpipe/sweep.hpp"
#include "statpipe/yield.hpp"

namespace {

using namespace statpipe;

PipelineModel bench_pipeline(int n_stages) {
  SweepSpec spec;
  spec.total_levels = 120;
  spec.stage_counts = {n_stages};
  spec.regimes = {{"mixed", {}}};
  spec.unit_gate = GateInstance{5.0, 5.0, 1.0, 1.0, 1.0, 1.0};
  VariationSpec v;
  v.inter_die_fraction = 0.5;
  v.systematic_fraction = 0.25;
  v.random_fraction = 0.25;
  v.total_sigma_ratio = 0.1;
  v.spatial_corr_length = 10.0;
  return build_chain_pipeline(spec, n_stages, v);
}

void BM_SampleParallel(benchmark::State &state) {
  const PipelineModel p = bench_pipeline(static_cast<int>(state.range(0)));
  McConfig cfg;
  cfg.samples = 100000;
  for (auto _ : state) {
    SampleMatrix m = sample_stage_delays(p, cfg);
    benchmark::DoNotOptimize(m.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.samples));
}

void BM_SampleSerial(benchmark::State &state) {
  const PipelineModel p = bench_pipeline(static_cast<int>(state.range(0)));
  McConfig cfg;
  cfg.samples = 100000;
  for (auto _ : state) {
    SampleMatrix m = sample_stage_delays_serial(p, cfg);
    benchmark::DoNotOptimize(m.data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.samples));
}

void BM_AnalyticalFold(benchmark::State &state) {
  const PipelineModel p = bench_pipeline(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    GaussianMoments m = pipeline_distribution(p);
    benchmark::DoNotOptimize(m);
  }
}

BENCHMARK(BM_SampleParallel)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleSerial)->Arg(4)->Arg(12)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyticalFold)->Arg(4)->Arg(12)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
