#include "statpipe/yield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "statpipe/normal.hpp"

namespace statpipe {

void YieldQuery::validate() const {
  if (!std::isfinite(target_delay) || target_delay <= 0.0)
    throw std::invalid_argument("yield query: target_delay must be finite and > 0");
  if (!std::isfinite(target_yield) || target_yield <= 0.0 || target_yield >= 1.0)
    throw std::invalid_argument("yield query: target_yield must lie in (0, 1)");
}

GaussianMoments pipeline_distribution(const PipelineModel &p, ReduceDiagnostics *diag) {
  p.validate();
  const std::vector<StageDistribution> dists = pipeline_stage_distributions(p);
  std::vector<GaussianMoments> moments;
  moments.reserve(dists.size());
  for (const StageDistribution &d : dists) moments.push_back(d.moments);
  return max_reduce(moments, stage_correlation_matrix(p), diag);
}

double yield_gaussian(const GaussianMoments &dist, double t) {
  if (dist.std_dev <= 0.0) return (dist.mean < t) ? 1.0 : 0.0;
  return std_normal_cdf((t - dist.mean) / dist.std_dev);
}

double yield_independent(const std::vector<GaussianMoments> &stages, double t) {
  double y = 1.0;
  for (const GaussianMoments &m : stages) y *= yield_gaussian(m, t);
  return y;
}

double mean_lower_bound(const std::vector<GaussianMoments> &stages) {
  if (stages.empty()) throw std::invalid_argument("mean lower bound: stage list is empty");
  double lb = stages[0].mean;
  for (const GaussianMoments &m : stages) lb = std::max(lb, m.mean);
  return lb;
}

double stage_mean_upper_bound(const YieldQuery &q, double sigma_t) {
  q.validate();
  return q.target_delay - sigma_t * std_normal_quantile(q.target_yield);
}

bool relaxed_stage_bound(const GaussianMoments &m, const YieldQuery &q) {
  q.validate();
  return m.mean + m.std_dev * std_normal_quantile(q.target_yield) <= q.target_delay;
}

bool stringent_stage_bound(const GaussianMoments &m, const YieldQuery &q, int n_stages) {
  q.validate();
  if (n_stages < 1) throw std::invalid_argument("stringent bound: n_stages must be >= 1");
  // n == 1 keeps the exponent a no-op so both bounds agree bit for bit.
  const double per_stage =
      (n_stages == 1) ? q.target_yield : std::pow(q.target_yield, 1.0 / n_stages);
  return m.mean + m.std_dev * std_normal_quantile(per_stage) <= q.target_delay;
}

void ChainEnvelope::validate() const {
  if (!std::isfinite(mu_min) || mu_min <= 0.0 || !std::isfinite(mu_max) || mu_max <= 0.0)
    throw std::invalid_argument("chain envelope: means must be finite and > 0");
  if (!std::isfinite(sigma_min) || sigma_min <= 0.0 || !std::isfinite(sigma_max) ||
      sigma_max <= 0.0)
    throw std::invalid_argument("chain envelope: sigmas must be finite and > 0");
}

namespace {

// Realizable chains satisfy mu = (mu_unit / sigma_unit^2) * sigma^2; the two
// envelope ends give the band slopes.
std::pair<double, double> band_slopes(const ChainEnvelope &chain) {
  const double k_min = chain.mu_min / (chain.sigma_min * chain.sigma_min);
  const double k_max = chain.mu_max / (chain.sigma_max * chain.sigma_max);
  return std::minmax(k_min, k_max);
}

}  // namespace

std::vector<DesignSpaceRow> design_space_region(const YieldQuery &q, int n_stages,
                                                const ChainEnvelope &chain,
                                                const std::vector<double> &sigma_grid) {
  q.validate();
  chain.validate();
  if (n_stages < 1) throw std::invalid_argument("design space: n_stages must be >= 1");
  const auto [k_lo, k_hi] = band_slopes(chain);
  const double z_relaxed = std_normal_quantile(q.target_yield);
  const double z_stringent =
      (n_stages == 1) ? z_relaxed
                      : std_normal_quantile(std::pow(q.target_yield, 1.0 / n_stages));
  std::vector<DesignSpaceRow> rows;
  rows.reserve(sigma_grid.size());
  for (double sigma : sigma_grid) {
    if (!std::isfinite(sigma) || sigma < 0.0)
      throw std::invalid_argument("design space: sigma grid values must be finite and >= 0");
    DesignSpaceRow r;
    r.sigma = sigma;
    r.mu_relaxed = q.target_delay - sigma * z_relaxed;
    r.mu_stringent = q.target_delay - sigma * z_stringent;
    r.mu_band_min = k_lo * sigma * sigma;
    r.mu_band_max = k_hi * sigma * sigma;
    rows.push_back(r);
  }
  return rows;
}

DesignSpacePoint classify_design_point(double mu, double sigma, const YieldQuery &q,
                                       int n_stages, const ChainEnvelope &chain) {
  q.validate();
  chain.validate();
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma < 0.0)
    throw std::invalid_argument("design point: mu must be finite, sigma finite and >= 0");
  const GaussianMoments m{mu, sigma};
  DesignSpacePoint pt;
  pt.mu = mu;
  pt.sigma = sigma;
  pt.feasible_relaxed = relaxed_stage_bound(m, q);
  pt.feasible_stringent = stringent_stage_bound(m, q, n_stages);
  const auto [k_lo, k_hi] = band_slopes(chain);
  const double tol = 1e-9 * std::max(1.0, std::fabs(mu));
  pt.realizable =
      mu >= k_lo * sigma * sigma - tol && mu <= k_hi * sigma * sigma + tol;
  return pt;
}

}  // namespace statpipe
