// Moment-matching max of correlated Gaussian variables (Clark's recursion).
#pragma once

#include <vector>

#include "statpipe/types.hpp"

namespace statpipe {

struct ClarkPairResult {
  GaussianMoments moments;  // normal approximation to max(a, b)
  double alpha = 0.0;       // (b.mean - a.mean) / spread
  double spread = 0.0;      // sqrt(sa^2 + sb^2 - 2*sa*sb*rho)
};

// Normal approximation to max(a, b) with corr(a, b) = rho.  Exact first and
// second moments; commutes in (a, b) to 1e-12.  spread < 1e-12 degenerates to
// the larger-mean input.
ClarkPairResult clark_max_pair(const GaussianMoments &a, const GaussianMoments &b,
                               double rho);

// Correlation between a third variable k and the pair max.  sigma_k cancels
// from corr = cov / (sigma_k * sigma_pair) but is kept for interface symmetry
// with the covariance form.  Result clamped to [-1, 1]; when overshoot is
// non-null it receives max(|raw| - 1, 0) for consistency reporting.
// pair.moments.std_dev < 1e-12 degenerates to the correlation with the
// dominant (larger-mean) input.
double clark_corr_propagate(double sigma_k, double rho_k_a, double rho_k_b,
                            const ClarkPairResult &pair, double sigma_a,
                            double sigma_b, double *overshoot = nullptr);

struct ReduceDiagnostics {
  int clamp_events = 0;        // propagated correlations outside [-1, 1]
  double worst_overshoot = 0;  // largest |raw| - 1 observed
};

// Left fold of clark_max_pair over the stages sorted by increasing mean
// (ties: decreasing std_dev, then original index); correlations of the
// remaining variables to the running max are updated after every fold.
// Throws std::invalid_argument on an empty list or dimension mismatch.
GaussianMoments max_reduce(const std::vector<GaussianMoments> &stages,
                           const CorrelationMatrix &corr,
                           ReduceDiagnostics *diag = nullptr);

}  // namespace statpipe
