// Per-stage gate sizing and the area-vs-delay sensitivity heuristic.
#pragma once

#include <optional>
#include <vector>

#include "statpipe/types.hpp"
#include "statpipe/variation.hpp"
#include "statpipe/yield.hpp"

namespace statpipe {

struct SizedStage {
  StageModel stage;
  bool feasible = false;
  int iterations = 0;  // outer weight-refresh sweeps
};

// Minimizes stage area subject to mu + k*sigma <= budget with sizes in
// [min_size, max_size].  The active-constraint optimum satisfies
// x_i = sqrt(lambda * q_i * w_i / a_i) clamped to bounds, where
// w_i = 1 + k * d(sigma)/d(mean_i); lambda is found by bisection (the
// constraint is monotone in lambda) and the weights are refreshed until the
// sizes settle below 1e-4 relative.  Infeasible budgets return the all-max
// sizing with feasible = false.
SizedStage size_stage(const StageModel &s, const VariationSpec &v, double budget,
                      double k);

// |dA/dD| along uniform relative scaling of the stage's sizes, divided by
// area_delay_scale so the result is dimensionless.  nullopt when every gate
// is pinned (min_size == max_size) or the probe cannot move the delay.
std::optional<double> stage_sensitivity(const StageModel &s, const VariationSpec &v,
                                        double area_delay_scale);

// (total area) / (sum of stage delay means): the pipeline-level scale that
// makes stage sensitivities comparable.
double pipeline_area_delay_scale(const PipelineModel &p);

struct SizingSolution {
  std::vector<std::vector<double>> sizes;  // [stage][gate]
  std::vector<GaussianMoments> per_stage;
  double total_area = 0.0;
  double achieved_yield = 0.0;  // yield_gaussian at the query target
  int iterations = 0;
  bool feasible = false;
};

// Copies the sizes onto a model (shape must match).
PipelineModel apply_sizes(PipelineModel p, const std::vector<std::vector<double>> &sizes);

std::vector<std::vector<double>> extract_sizes(const PipelineModel &p);

// Assembles a solution record from a sized model.
SizingSolution solution_from_model(const PipelineModel &p, const YieldQuery &q,
                                   int iterations, bool feasible);

// Every stage independently sized to the full target period with the
// equal-stage per-stage yield (target^(1/n)).
SizingSolution balanced_baseline(const PipelineModel &p, const YieldQuery &q);

}  // namespace statpipe
