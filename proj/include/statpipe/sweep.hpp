// Fixed-work depth/stage-count trade-off sweep over inverter-chain pipelines.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "statpipe/sampling.hpp"
#include "statpipe/variation.hpp"

namespace statpipe {

struct SweepRegime {
  std::string name;
  VariationSpec variation;
};

struct SweepSpec {
  int total_levels = 120;              // n_stages * logic_depth, held constant
  std::vector<int> stage_counts;       // each must divide total_levels
  std::vector<SweepRegime> regimes;
  GateInstance unit_gate;              // replicated to build every chain
  double latch_overhead = 5.0;
  double stage_spacing = 1.0;          // distance between adjacent stages

  void validate() const;  // throws std::invalid_argument
};

// Chain pipeline with n_stages stages of logic_depth copies of unit_gate.
PipelineModel build_chain_pipeline(const SweepSpec &spec, int n_stages,
                                   const VariationSpec &v);

struct SweepRow {
  std::string regime;
  int n_stages = 0;
  int logic_depth = 0;
  GaussianMoments analytical;
  double analytical_ratio = 0.0;  // sigma/mu
  GaussianMoments empirical;
  double empirical_ratio = 0.0;
};

// One row per (regime, stage count), analytical and Monte-Carlo side by side.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, const McConfig &cfg);

}  // namespace statpipe
