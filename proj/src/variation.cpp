#include "statpipe/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace statpipe {

namespace {

void require(bool ok, const std::string &msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void VariationSpec::validate() const {
  require(std::isfinite(inter_die_fraction) && inter_die_fraction >= 0.0,
          "variation: inter_die_fraction must be finite and >= 0");
  require(std::isfinite(systematic_fraction) && systematic_fraction >= 0.0,
          "variation: systematic_fraction must be finite and >= 0");
  require(std::isfinite(random_fraction) && random_fraction >= 0.0,
          "variation: random_fraction must be finite and >= 0");
  const double sum = inter_die_fraction + systematic_fraction + random_fraction;
  require(std::fabs(sum - 1.0) <= 1e-9, "variation: variance fractions must sum to 1");
  require(std::isfinite(total_sigma_ratio) && total_sigma_ratio >= 0.0,
          "variation: total_sigma_ratio must be finite and >= 0");
  require(std::isfinite(spatial_corr_length) && spatial_corr_length > 0.0,
          "variation: spatial_corr_length must be finite and > 0");
}

void GateInstance::validate() const {
  require(std::isfinite(p) && p >= 0.0, "gate: p must be finite and >= 0");
  require(std::isfinite(q) && q >= 0.0, "gate: q must be finite and >= 0");
  require(std::isfinite(area_coefficient) && area_coefficient > 0.0,
          "gate: area_coefficient must be finite and > 0");
  require(std::isfinite(min_size) && min_size > 0.0, "gate: L must be finite and > 0");
  require(std::isfinite(max_size) && max_size >= min_size, "gate: U must be finite and >= L");
  require(std::isfinite(x) && x >= min_size && x <= max_size,
          "gate: x must lie within [L, U]");
}

GateMoments gate_delay_moments(const GateInstance &g, const VariationSpec &v) {
  GateMoments m;
  m.mean = g.p + g.q / g.x;
  const double sigma_total = v.total_sigma_ratio * m.mean;
  m.sigma_inter = std::sqrt(v.inter_die_fraction) * sigma_total;
  m.sigma_sys = std::sqrt(v.systematic_fraction) * sigma_total;
  m.sigma_rand = std::sqrt(v.random_fraction) * sigma_total;
  return m;
}

void StageModel::validate() const {
  require(!gates.empty(), "stage: needs at least one gate");
  for (const GateInstance &g : gates) g.validate();
  require(std::isfinite(latch_overhead) && latch_overhead >= 0.0,
          "stage: latch_overhead must be finite and >= 0");
  require(std::isfinite(position), "stage: position must be finite");
}

StageDistribution stage_distribution(const StageModel &s, const VariationSpec &v) {
  StageDistribution d;
  // latch_overhead is deterministic: it shifts the mean only.
  double mean = s.latch_overhead;
  double var_rand = 0.0;
  for (const GateInstance &g : s.gates) {
    const GateMoments m = gate_delay_moments(g, v);
    mean += m.mean;
    d.sigma_inter += m.sigma_inter;
    d.sigma_sys += m.sigma_sys;
    var_rand += m.sigma_rand * m.sigma_rand;
  }
  d.sigma_rand = std::sqrt(var_rand);
  const double var = d.sigma_inter * d.sigma_inter + d.sigma_sys * d.sigma_sys + var_rand;
  d.moments = {mean, std::sqrt(var)};
  return d;
}

void PipelineModel::validate() const {
  require(!stages.empty(), "pipeline: needs at least one stage");
  variation.validate();
  for (const StageModel &s : stages) s.validate();
  if (correlation_override) {
    require(correlation_override->size() == stages.size(),
            "pipeline: correlation_matrix dimension must equal the stage count");
    correlation_override->validate();
  }
}

std::vector<StageDistribution> pipeline_stage_distributions(const PipelineModel &p) {
  std::vector<StageDistribution> out;
  out.reserve(p.stages.size());
  for (const StageModel &s : p.stages) out.push_back(stage_distribution(s, p.variation));
  return out;
}

CorrelationMatrix stage_correlation_matrix(const PipelineModel &p) {
  if (p.correlation_override) return *p.correlation_override;
  const std::vector<StageDistribution> dists = pipeline_stage_distributions(p);
  const std::size_t n = dists.size();
  CorrelationMatrix corr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double si = dists[i].moments.std_dev;
      const double sj = dists[j].moments.std_dev;
      if (si <= 0.0 || sj <= 0.0) continue;  // a deterministic stage correlates to nothing
      const double d = std::fabs(p.stages[i].position - p.stages[j].position);
      const double decay = std::exp(-d / p.variation.spatial_corr_length);
      const double cov = dists[i].sigma_inter * dists[j].sigma_inter +
                         decay * dists[i].sigma_sys * dists[j].sigma_sys;
      // Cauchy-Schwarz bounds cov by si*sj; clamp shields the tiny FP excess.
      corr.set(i, j, std::clamp(cov / (si * sj), -1.0, 1.0));
    }
  }
  return corr;
}

GaussianMoments inverter_chain_relation(int n_levels, double mu_min, double sigma_min) {
  if (n_levels < 1) throw std::invalid_argument("inverter chain: n_levels must be >= 1");
  return {n_levels * mu_min, std::sqrt(static_cast<double>(n_levels)) * sigma_min};
}

double gate_area(const GateInstance &g) { return g.area_coefficient * g.x; }

double stage_area(const StageModel &s) {
  double a = 0.0;
  for (const GateInstance &g : s.gates) a += gate_area(g);
  return a;
}

double pipeline_total_area(const PipelineModel &p) {
  double a = 0.0;
  for (const StageModel &s : p.stages) a += stage_area(s);
  return a;
}

}  // namespace statpipe
