#include "statpipe/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "statpipe/normal.hpp"

namespace statpipe {

namespace {

constexpr double kTransferFraction = 0.005;  // of the starting total area, per step
constexpr int kMaxBudgetPasses = 50;
constexpr double kSlackSettleFraction = 0.001;  // of the target period
constexpr double kYieldFeasTol = 1e-12;

std::vector<std::optional<double>> stage_sensitivities(const PipelineModel &p) {
  const double scale = pipeline_area_delay_scale(p);
  std::vector<std::optional<double>> r;
  r.reserve(p.stages.size());
  for (const StageModel &s : p.stages)
    r.push_back(stage_sensitivity(s, p.variation, scale));
  return r;
}

// Donor sheds area cheaply in delay terms (largest ratio); receiver converts
// area into delay most effectively (smallest ratio).
bool pick_transfer_pair(const std::vector<std::optional<double>> &r, std::size_t *donor,
                        std::size_t *receiver) {
  bool have = false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i]) continue;
    if (!have) {
      *donor = *receiver = i;
      have = true;
      continue;
    }
    if (*r[i] > *r[*donor]) *donor = i;
    if (*r[i] < *r[*receiver]) *receiver = i;
  }
  return have && *donor != *receiver;
}

void scale_stage_sizes(StageModel &s, double factor) {
  for (GateInstance &g : s.gates)
    g.x = std::clamp(g.x * factor, g.min_size, g.max_size);
}

double stage_min_area(const StageModel &s) {
  double a = 0.0;
  for (const GateInstance &g : s.gates) a += g.area_coefficient * g.min_size;
  return a;
}

double stage_max_area(const StageModel &s) {
  double a = 0.0;
  for (const GateInstance &g : s.gates) a += g.area_coefficient * g.max_size;
  return a;
}

double scaled_stage_area(const StageModel &s, double factor) {
  double a = 0.0;
  for (const GateInstance &g : s.gates)
    a += g.area_coefficient * std::clamp(g.x * factor, g.min_size, g.max_size);
  return a;
}

// Scales every gate in the stage by one common factor chosen so the clamped
// area lands on the target.  Area is piecewise linear and monotone in the
// factor, so bisection pins it to rounding error even when only part of the
// stage is against a bound.
void scale_stage_to_area(StageModel &s, double target_area) {
  if (target_area <= stage_min_area(s)) {
    for (GateInstance &g : s.gates) g.x = g.min_size;
    return;
  }
  if (target_area >= stage_max_area(s)) {
    for (GateInstance &g : s.gates) g.x = g.max_size;
    return;
  }
  double lo = 0.0;
  double hi = 1.0;
  while (scaled_stage_area(s, hi) < target_area) hi *= 2.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (scaled_stage_area(s, mid) < target_area ? lo : hi) = mid;
  }
  scale_stage_sizes(s, hi);
}

// Moves area from donor to receiver.  The transfer shrinks to what both
// sides can absorb within their size bounds, so total area is conserved; it
// becomes a no-op once either side is pinned.
void transfer_area(PipelineModel &p, std::size_t donor, std::size_t receiver,
                   double delta_area) {
  StageModel &d = p.stages[donor];
  StageModel &r = p.stages[receiver];
  const double donor_area = stage_area(d);
  const double receiver_area = stage_area(r);
  const double move = std::min({delta_area, donor_area - stage_min_area(d),
                                stage_max_area(r) - receiver_area});
  if (move <= 0.0) return;
  scale_stage_to_area(d, donor_area - move);
  scale_stage_to_area(r, receiver_area + move);
}

}  // namespace

SizingSolution unbalance_explore(const PipelineModel &p, const YieldQuery &q,
                                 int max_steps) {
  p.validate();
  q.validate();
  PipelineModel current = p;
  const double step_area = kTransferFraction * pipeline_total_area(p);
  double current_yield = yield_gaussian(pipeline_distribution(current), q.target_delay);
  int accepted = 0;
  while (accepted < max_steps) {
    std::size_t donor = 0, receiver = 0;
    if (!pick_transfer_pair(stage_sensitivities(current), &donor, &receiver)) break;
    PipelineModel candidate = current;
    transfer_area(candidate, donor, receiver, step_area);
    const double candidate_yield =
        yield_gaussian(pipeline_distribution(candidate), q.target_delay);
    if (candidate_yield <= current_yield) break;
    current = std::move(candidate);
    current_yield = candidate_yield;
    ++accepted;
  }
  return solution_from_model(current, q, accepted,
                             current_yield >= q.target_yield - kYieldFeasTol);
}

SizingSolution unbalance_force(const PipelineModel &p, const YieldQuery &q, int steps) {
  p.validate();
  q.validate();
  PipelineModel current = p;
  const double step_area = kTransferFraction * pipeline_total_area(p);
  std::size_t donor = 0, receiver = 0;
  if (!pick_transfer_pair(stage_sensitivities(current), &donor, &receiver)) {
    const double y = yield_gaussian(pipeline_distribution(current), q.target_delay);
    return solution_from_model(current, q, 0, y >= q.target_yield - kYieldFeasTol);
  }
  for (int i = 0; i < steps; ++i) transfer_area(current, donor, receiver, step_area);
  const double y = yield_gaussian(pipeline_distribution(current), q.target_delay);
  return solution_from_model(current, q, steps, y >= q.target_yield - kYieldFeasTol);
}

SizingSolution global_optimize(const PipelineModel &p, const YieldQuery &q) {
  p.validate();
  q.validate();
  const double k = std_normal_quantile(q.target_yield);

  // Working budget starts at the worst per-stage risk of the incoming design,
  // which makes re-optimizing an already-sized pipeline a fixed point.
  double budget = -std::numeric_limits<double>::infinity();
  for (const StageDistribution &d : pipeline_stage_distributions(p))
    budget = std::max(budget, d.moments.mean + k * d.moments.std_dev);

  PipelineModel current = p;
  PipelineModel best = p;
  bool ever_feasible = false;
  bool have_best = false;
  double best_area = 0.0;
  double best_yield = -1.0;
  double prev_slack = 0.0;
  int passes = 0;

  for (int pass = 1; pass <= kMaxBudgetPasses; ++pass) {
    passes = pass;

    // Cheapest-delay stages first; order does not change the per-stage
    // subproblems, only the sweep structure.
    const std::vector<std::optional<double>> r = stage_sensitivities(current);
    std::vector<std::size_t> order(current.stages.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ra = r[a] ? *r[a] : std::numeric_limits<double>::infinity();
      const double rb = r[b] ? *r[b] : std::numeric_limits<double>::infinity();
      if (ra != rb) return ra < rb;
      return a < b;
    });
    for (std::size_t s : order)
      current.stages[s] = size_stage(current.stages[s], current.variation, budget, k).stage;

    const GaussianMoments dist = pipeline_distribution(current);
    const double slack = q.target_delay - (dist.mean + k * dist.std_dev);
    const double yield = yield_gaussian(dist, q.target_delay);
    const double area = pipeline_total_area(current);
    const bool feasible = yield >= q.target_yield - kYieldFeasTol;
    ever_feasible = ever_feasible || feasible;

    const bool better = !have_best ||
                        (feasible && (best_yield < q.target_yield - kYieldFeasTol ||
                                      area < best_area)) ||
                        (!feasible && best_yield < q.target_yield - kYieldFeasTol &&
                         yield > best_yield);
    if (better) {
      best = current;
      best_area = area;
      best_yield = yield;
      have_best = true;
    }

    if (pass >= 2 && std::fabs(slack - prev_slack) <
                         kSlackSettleFraction * q.target_delay)
      break;
    prev_slack = slack;
    budget += slack;
  }

  return solution_from_model(best, q, passes, ever_feasible);
}

}  // namespace statpipe
