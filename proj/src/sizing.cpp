#include "statpipe/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "statpipe/normal.hpp"

namespace statpipe {

namespace {

constexpr int kMaxWeightSweeps = 60;
constexpr int kBisectIterations = 100;
constexpr double kSizeSettleTol = 1e-4;

std::vector<double> gate_sizes(const StageModel &s) {
  std::vector<double> x;
  x.reserve(s.gates.size());
  for (const GateInstance &g : s.gates) x.push_back(g.x);
  return x;
}

StageModel with_sizes(StageModel s, const std::vector<double> &x) {
  for (std::size_t i = 0; i < s.gates.size(); ++i) s.gates[i].x = x[i];
  return s;
}

double risk_metric(const StageModel &s, const VariationSpec &v,
                   const std::vector<double> &x, double k) {
  const StageDistribution d = stage_distribution(with_sizes(s, x), v);
  return d.moments.mean + k * d.moments.std_dev;
}

// w_i = 1 + k * d(sigma)/d(mean_i) evaluated at the current sizes; sigma^2 =
// r^2 * ((fI + fS) * S^2 + fR * Q) with S and Q the sum and sum of squares of
// the gate means.
std::vector<double> constraint_weights(const StageModel &s, const VariationSpec &v,
                                       const std::vector<double> &x, double k) {
  const std::size_t n = s.gates.size();
  std::vector<double> means(n);
  double mean_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    means[i] = s.gates[i].p + s.gates[i].q / x[i];
    mean_sum += means[i];
  }
  const StageDistribution d = stage_distribution(with_sizes(s, x), v);
  const double sigma = d.moments.std_dev;
  std::vector<double> w(n, 1.0);
  if (sigma <= 0.0) return w;
  const double r2 = v.total_sigma_ratio * v.total_sigma_ratio;
  const double shared = v.inter_die_fraction + v.systematic_fraction;
  for (std::size_t i = 0; i < n; ++i) {
    const double dsigma = r2 * (shared * mean_sum + v.random_fraction * means[i]) / sigma;
    // Guard against k < 0 driving a weight nonpositive.
    w[i] = std::max(1.0 + k * dsigma, 1e-6);
  }
  return w;
}

std::vector<double> sizes_for_multiplier(const StageModel &s,
                                         const std::vector<double> &w, double lambda) {
  std::vector<double> x(s.gates.size());
  for (std::size_t i = 0; i < s.gates.size(); ++i) {
    const GateInstance &g = s.gates[i];
    const double raw = std::sqrt(lambda * g.q * w[i] / g.area_coefficient);
    x[i] = std::clamp(raw, g.min_size, g.max_size);
  }
  return x;
}

}  // namespace

SizedStage size_stage(const StageModel &s, const VariationSpec &v, double budget,
                      double k) {
  s.validate();
  v.validate();
  const std::size_t n = s.gates.size();
  std::vector<double> all_min(n), all_max(n);
  for (std::size_t i = 0; i < n; ++i) {
    all_min[i] = s.gates[i].min_size;
    all_max[i] = s.gates[i].max_size;
  }

  // Area grows with every size, so a feasible all-min sizing is optimal.
  if (risk_metric(s, v, all_min, k) <= budget)
    return {with_sizes(s, all_min), true, 0};
  if (risk_metric(s, v, all_max, k) > budget)
    return {with_sizes(s, all_max), false, 0};

  std::vector<double> x = all_min;
  int sweeps = 0;
  while (sweeps < kMaxWeightSweeps) {
    ++sweeps;
    const std::vector<double> w = constraint_weights(s, v, x, k);

    // risk(sizes(lambda)) decreases in lambda: bracket, then bisect keeping
    // the upper end feasible.
    double lo = 0.0;
    double hi = 1.0;
    while (risk_metric(s, v, sizes_for_multiplier(s, w, hi), k) > budget) hi *= 2.0;
    for (int it = 0; it < kBisectIterations; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (risk_metric(s, v, sizes_for_multiplier(s, w, mid), k) <= budget)
        hi = mid;
      else
        lo = mid;
    }
    const std::vector<double> x_new = sizes_for_multiplier(s, w, hi);

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::fabs(x_new[i] - x[i]) / x[i]);
    x = x_new;
    if (worst < kSizeSettleTol) break;
  }
  return {with_sizes(s, x), true, sweeps};
}

std::optional<double> stage_sensitivity(const StageModel &s, const VariationSpec &v,
                                        double area_delay_scale) {
  s.validate();
  if (!(area_delay_scale > 0.0))
    throw std::invalid_argument("stage sensitivity: area_delay_scale must be > 0");
  bool movable = false;
  for (const GateInstance &g : s.gates)
    if (g.max_size > g.min_size) movable = true;
  if (!movable) return std::nullopt;

  const double h = 1e-4;
  std::vector<double> up(s.gates.size()), down(s.gates.size());
  for (std::size_t i = 0; i < s.gates.size(); ++i) {
    const GateInstance &g = s.gates[i];
    up[i] = std::clamp(g.x * (1.0 + h), g.min_size, g.max_size);
    down[i] = std::clamp(g.x * (1.0 - h), g.min_size, g.max_size);
  }
  const StageModel s_up = with_sizes(s, up);
  const StageModel s_down = with_sizes(s, down);
  const double d_area = stage_area(s_up) - stage_area(s_down);
  const double d_delay = stage_distribution(s_up, v).moments.mean -
                         stage_distribution(s_down, v).moments.mean;
  if (std::fabs(d_delay) < 1e-15) return std::nullopt;
  return std::fabs(d_area / d_delay) / area_delay_scale;
}

double pipeline_area_delay_scale(const PipelineModel &p) {
  p.validate();
  double mean_sum = 0.0;
  for (const StageDistribution &d : pipeline_stage_distributions(p))
    mean_sum += d.moments.mean;
  return pipeline_total_area(p) / mean_sum;
}

PipelineModel apply_sizes(PipelineModel p,
                          const std::vector<std::vector<double>> &sizes) {
  if (sizes.size() != p.stages.size())
    throw std::invalid_argument("apply sizes: stage count mismatch");
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    if (sizes[s].size() != p.stages[s].gates.size())
      throw std::invalid_argument("apply sizes: gate count mismatch");
    for (std::size_t g = 0; g < sizes[s].size(); ++g) p.stages[s].gates[g].x = sizes[s][g];
  }
  p.validate();
  return p;
}

std::vector<std::vector<double>> extract_sizes(const PipelineModel &p) {
  std::vector<std::vector<double>> sizes;
  sizes.reserve(p.stages.size());
  for (const StageModel &s : p.stages) sizes.push_back(gate_sizes(s));
  return sizes;
}

SizingSolution solution_from_model(const PipelineModel &p, const YieldQuery &q,
                                   int iterations, bool feasible) {
  q.validate();
  SizingSolution sol;
  sol.sizes = extract_sizes(p);
  for (const StageDistribution &d : pipeline_stage_distributions(p))
    sol.per_stage.push_back(d.moments);
  sol.total_area = pipeline_total_area(p);
  sol.achieved_yield = yield_gaussian(pipeline_distribution(p), q.target_delay);
  sol.iterations = iterations;
  sol.feasible = feasible;
  return sol;
}

SizingSolution balanced_baseline(const PipelineModel &p, const YieldQuery &q) {
  p.validate();
  q.validate();
  const int n = static_cast<int>(p.stages.size());
  const double per_stage_yield =
      (n == 1) ? q.target_yield : std::pow(q.target_yield, 1.0 / n);
  const double k = std_normal_quantile(per_stage_yield);
  PipelineModel sized = p;
  bool feasible = true;
  int iterations = 0;
  for (StageModel &s : sized.stages) {
    const SizedStage r = size_stage(s, p.variation, q.target_delay, k);
    s = r.stage;
    feasible = feasible && r.feasible;
    iterations = std::max(iterations, r.iterations);
  }
  return solution_from_model(sized, q, iterations, feasible);
}

}  // namespace statpipe
