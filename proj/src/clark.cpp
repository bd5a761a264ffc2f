#include "statpipe/clark.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "statpipe/normal.hpp"

namespace statpipe {

namespace {
constexpr double kDegenerateSpread = 1e-12;
}

ClarkPairResult clark_max_pair(const GaussianMoments &a, const GaussianMoments &b,
                               double rho) {
  const double var =
      a.std_dev * a.std_dev + b.std_dev * b.std_dev - 2.0 * a.std_dev * b.std_dev * rho;
  const double spread = std::sqrt(std::max(var, 0.0));
  if (spread < kDegenerateSpread) {
    // The difference b - a is (almost surely) the constant b.mean - a.mean,
    // so the max is simply the larger-mean input.
    const GaussianMoments &winner = (b.mean >= a.mean) ? b : a;
    return {winner, 0.0, spread};
  }
  const double alpha = (b.mean - a.mean) / spread;
  const double cdf_pos = std_normal_cdf(alpha);
  const double cdf_neg = std_normal_cdf(-alpha);
  const double pdf = std_normal_pdf(alpha);
  const double m1 = b.mean * cdf_pos + a.mean * cdf_neg + spread * pdf;
  const double m2 = (b.mean * b.mean + b.std_dev * b.std_dev) * cdf_pos +
                    (a.mean * a.mean + a.std_dev * a.std_dev) * cdf_neg +
                    (a.mean + b.mean) * spread * pdf;
  const double var_out = std::max(m2 - m1 * m1, 0.0);
  return {{m1, std::sqrt(var_out)}, alpha, spread};
}

double clark_corr_propagate(double sigma_k, double rho_k_a, double rho_k_b,
                            const ClarkPairResult &pair, double sigma_a, double sigma_b,
                            double *overshoot) {
  // sigma_k scales both cov(k, max) and the normalization, so it cancels.
  (void)sigma_k;
  if (overshoot) *overshoot = 0.0;
  if (pair.moments.std_dev < kDegenerateSpread) {
    // Correlation with a (near-)deterministic max is ill-defined; fall back
    // to the input that wins the max.
    return (pair.alpha >= 0.0) ? rho_k_b : rho_k_a;
  }
  const double raw = (sigma_b * rho_k_b * std_normal_cdf(pair.alpha) +
                      sigma_a * rho_k_a * std_normal_cdf(-pair.alpha)) /
                     pair.moments.std_dev;
  if (std::fabs(raw) > 1.0) {
    if (overshoot) *overshoot = std::fabs(raw) - 1.0;
    return std::clamp(raw, -1.0, 1.0);
  }
  return raw;
}

GaussianMoments max_reduce(const std::vector<GaussianMoments> &stages,
                           const CorrelationMatrix &corr, ReduceDiagnostics *diag) {
  if (stages.empty()) throw std::invalid_argument("max_reduce: stage list is empty");
  if (corr.size() != stages.size())
    throw std::invalid_argument("max_reduce: correlation dimension does not match stage count");
  const std::size_t n = stages.size();

  // Fold order: increasing mean, ties by decreasing std_dev then index.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (stages[i].mean != stages[j].mean) return stages[i].mean < stages[j].mean;
    if (stages[i].std_dev != stages[j].std_dev) return stages[i].std_dev > stages[j].std_dev;
    return i < j;
  });

  GaussianMoments running = stages[order[0]];
  std::vector<double> rho_running(n);
  for (std::size_t j = 0; j < n; ++j) rho_running[j] = corr(order[0], j);

  for (std::size_t t = 1; t < n; ++t) {
    const std::size_t bi = order[t];
    const GaussianMoments &b = stages[bi];
    const ClarkPairResult pair = clark_max_pair(running, b, rho_running[bi]);
    for (std::size_t u = t + 1; u < n; ++u) {
      const std::size_t j = order[u];
      double over = 0.0;
      rho_running[j] = clark_corr_propagate(stages[j].std_dev, rho_running[j], corr(bi, j),
                                            pair, running.std_dev, b.std_dev, &over);
      if (diag && over > 0.0) {
        ++diag->clamp_events;
        diag->worst_overshoot = std::max(diag->worst_overshoot, over);
      }
    }
    running = pair.moments;
  }
  return running;
}

}  // namespace statpipe
