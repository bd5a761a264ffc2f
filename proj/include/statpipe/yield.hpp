// Parametric yield estimates and per-stage design-space bounds.
#pragma once

#include <vector>

#include "statpipe/clark.hpp"
#include "statpipe/types.hpp"
#include "statpipe/variation.hpp"

namespace statpipe {

struct YieldQuery {
  double target_delay = 0.0;  // clock period T, ps
  double target_yield = 0.0;  // required Pr{delay < T}

  void validate() const;  // throws std::invalid_argument
};

// stage_distribution + stage_correlation_matrix + max_reduce.
GaussianMoments pipeline_distribution(const PipelineModel &p,
                                      ReduceDiagnostics *diag = nullptr);

// Product of per-stage Phi((t - mu_i)/sigma_i); sigma_i = 0 contributes a step.
double yield_independent(const std::vector<GaussianMoments> &stages, double t);

// Phi((t - mu)/sigma) treating the pipeline delay as one Gaussian;
// sigma = 0 degenerates to a step at the mean.
double yield_gaussian(const GaussianMoments &dist, double t);

// max_i mean_i; no pipeline distribution mean can fall below it.
double mean_lower_bound(const std::vector<GaussianMoments> &stages);

// T - sigma_t * quantile(target_yield): largest admissible pipeline mean.
double stage_mean_upper_bound(const YieldQuery &q, double sigma_t);

// mu + sigma * quantile(Y) <= T  (necessary bound; inclusive).
bool relaxed_stage_bound(const GaussianMoments &m, const YieldQuery &q);

// mu + sigma * quantile(Y^(1/n)) <= T  (equal independent stages; inclusive).
bool stringent_stage_bound(const GaussianMoments &m, const YieldQuery &q, int n_stages);

// Min/max-size inverter moments bounding what a gate chain can realize.
struct ChainEnvelope {
  double mu_min = 0.0, sigma_min = 0.0;  // minimum-size inverter
  double mu_max = 0.0, sigma_max = 0.0;  // maximum-size inverter

  void validate() const;  // sigma_min/sigma_max must be > 0
};

struct DesignSpacePoint {
  double mu = 0.0, sigma = 0.0;
  bool feasible_relaxed = false;
  bool feasible_stringent = false;
  bool realizable = false;  // inside the chain-envelope band
};

// One row per sigma on the caller's grid: the two feasibility boundaries and
// the realizable band mu = (mu_ref/sigma_ref^2) * sigma^2 for both envelope
// ends.
struct DesignSpaceRow {
  double sigma = 0.0;
  double mu_relaxed = 0.0;    // necessary-bound boundary
  double mu_stringent = 0.0;  // equal-stage-bound boundary
  double mu_band_min = 0.0;
  double mu_band_max = 0.0;
};

std::vector<DesignSpaceRow> design_space_region(const YieldQuery &q, int n_stages,
                                                const ChainEnvelope &chain,
                                                const std::vector<double> &sigma_grid);

DesignSpacePoint classify_design_point(double mu, double sigma, const YieldQuery &q,
                                       int n_stages, const ChainEnvelope &chain);

}  // namespace statpipe
