#include "statpipe/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "statpipe/yield.hpp"

namespace statpipe {

void SweepSpec::validate() const {
  if (total_levels < 1)
    throw std::invalid_argument("sweep: total_levels must be >= 1");
  if (stage_counts.empty())
    throw std::invalid_argument("sweep: needs at least one stage count");
  for (int n : stage_counts) {
    if (n < 1) throw std::invalid_argument("sweep: stage counts must be >= 1");
    if (total_levels % n != 0)
      throw std::invalid_argument("sweep: every stage count must divide total_levels");
  }
  if (regimes.empty()) throw std::invalid_argument("sweep: needs at least one regime");
  for (const SweepRegime &r : regimes) {
    if (r.name.empty()) throw std::invalid_argument("sweep: regime names must be non-empty");
    r.variation.validate();
  }
  unit_gate.validate();
  if (!std::isfinite(latch_overhead) || latch_overhead < 0.0)
    throw std::invalid_argument("sweep: latch_overhead must be finite and >= 0");
  if (!std::isfinite(stage_spacing) || stage_spacing < 0.0)
    throw std::invalid_argument("sweep: stage_spacing must be finite and >= 0");
}

PipelineModel build_chain_pipeline(const SweepSpec &spec, int n_stages,
                                   const VariationSpec &v) {
  spec.validate();
  if (n_stages < 1 || spec.total_levels % n_stages != 0)
    throw std::invalid_argument("sweep: n_stages must divide total_levels");
  const int depth = spec.total_levels / n_stages;
  PipelineModel p;
  p.variation = v;
  p.stages.reserve(static_cast<std::size_t>(n_stages));
  for (int s = 0; s < n_stages; ++s) {
    StageModel stage;
    stage.gates.assign(static_cast<std::size_t>(depth), spec.unit_gate);
    stage.latch_overhead = spec.latch_overhead;
    stage.position = s * spec.stage_spacing;
    p.stages.push_back(std::move(stage));
  }
  p.validate();
  return p;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec, const McConfig &cfg) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.regimes.size() * spec.stage_counts.size());
  for (const SweepRegime &regime : spec.regimes) {
    for (int n : spec.stage_counts) {
      const PipelineModel p = build_chain_pipeline(spec, n, regime.variation);
      SweepRow row;
      row.regime = regime.name;
      row.n_stages = n;
      row.logic_depth = spec.total_levels / n;
      row.analytical = pipeline_distribution(p);
      row.analytical_ratio = row.analytical.std_dev / row.analytical.mean;
      const SampleMatrix samples = sample_stage_delays(p, cfg);
      row.empirical = empirical_max_stats(samples, row.analytical.mean).moments;
      row.empirical_ratio = row.empirical.std_dev / row.empirical.mean;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace statpipe
