// Gate/stage delay model and process-variation decomposition.
#pragma once

#include <optional>
#include <vector>

#include "statpipe/types.hpp"

namespace statpipe {

// Split of delay variance into the three classic components plus the overall
// sigma/mean ratio.  Fractions apply to variance and must sum to 1.
struct VariationSpec {
  double inter_die_fraction = 0.0;
  double systematic_fraction = 0.0;
  double random_fraction = 1.0;
  double total_sigma_ratio = 0.1;   // per-gate sigma as a fraction of its mean
  double spatial_corr_length = 1.0; // same unit as stage positions

  void validate() const;  // throws std::invalid_argument
};

// One sizable gate: delay p + q/x, area area_coefficient * x.
struct GateInstance {
  double p = 0.0;                 // intrinsic delay, ps
  double q = 0.0;                 // drive term, ps at x = 1
  double area_coefficient = 1.0;  // area units per unit size
  double x = 1.0;                 // size factor
  double min_size = 1.0;          // lower size bound (L)
  double max_size = 1.0;          // upper size bound (U)

  void validate() const;
};

struct GateMoments {
  double mean = 0.0;
  double sigma_inter = 0.0;
  double sigma_sys = 0.0;
  double sigma_rand = 0.0;
};

// mean = p + q/x; total sigma = ratio * mean split by variance fractions.
GateMoments gate_delay_moments(const GateInstance &g, const VariationSpec &v);

// A register-to-register segment: gate chain + latch overhead + placement.
struct StageModel {
  std::vector<GateInstance> gates;
  double latch_overhead = 0.0;  // clock-to-Q + setup, ps
  double position = 0.0;        // scalar coordinate for spatial correlation

  void validate() const;
};

struct StageDistribution {
  GaussianMoments moments;
  double sigma_inter = 0.0;  // adds linearly across gates (fully shared)
  double sigma_sys = 0.0;    // gates share the stage position: adds linearly
  double sigma_rand = 0.0;   // independent gates: adds in quadrature
};

StageDistribution stage_distribution(const StageModel &s, const VariationSpec &v);

struct PipelineModel {
  std::vector<StageModel> stages;
  VariationSpec variation;
  // When present, used verbatim in place of the computed stage correlations.
  std::optional<CorrelationMatrix> correlation_override;

  void validate() const;
};

std::vector<StageDistribution> pipeline_stage_distributions(const PipelineModel &p);

// rho_ij = (sI_i*sI_j + exp(-d_ij/corr_length)*sS_i*sS_j) / (s_i*s_j).
// A stage with zero total sigma correlates to nothing (rows/cols 0).
// Honors correlation_override when set.
CorrelationMatrix stage_correlation_matrix(const PipelineModel &p);

// Moments of a chain of n_levels identical minimum inverters:
// (n*mu_min, sqrt(n)*sigma_min).
GaussianMoments inverter_chain_relation(int n_levels, double mu_min, double sigma_min);

double gate_area(const GateInstance &g);
double stage_area(const StageModel &s);
double pipeline_total_area(const PipelineModel &p);

}  // namespace statpipe
