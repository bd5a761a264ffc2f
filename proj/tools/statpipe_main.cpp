// statpipe: statistical pipeline timing, parametric yield, and gate sizing.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statpipe/normal.hpp"
#include "statpipe/optimize.hpp"
#include "statpipe/pipeline_file.hpp"
#include "statpipe/report.hpp"
#include "statpipe/sampling.hpp"
#include "statpipe/sizing.hpp"
#include "statpipe/sweep.hpp"
#include "statpipe/yield.hpp"

using namespace statpipe;
using nlohmann::ordered_json;

namespace {

std::string pad_left(const std::string &s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string &s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

void emit_structured(const ordered_json &doc) { std::cout << doc.dump(2) << "\n"; }

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

double parse_double_strict(const std::string &s, const std::string &what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw std::invalid_argument(what + ": cannot parse number '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument(what + ": cannot parse number '" + s + "'");
  return v;
}

// "lo:hi:step" or "v1,v2,...".
std::vector<double> parse_sigma_grid(const std::string &spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    const std::vector<std::string> parts = split_list(spec);
    std::vector<std::string> bounds;
    std::string item;
    std::istringstream in(spec);
    while (std::getline(in, item, ':')) bounds.push_back(item);
    if (bounds.size() != 3)
      throw std::invalid_argument("--sigma-grid: expected lo:hi:step");
    const double lo = parse_double_strict(bounds[0], "--sigma-grid");
    const double hi = parse_double_strict(bounds[1], "--sigma-grid");
    const double step = parse_double_strict(bounds[2], "--sigma-grid");
    if (!(step > 0.0) || hi < lo)
      throw std::invalid_argument("--sigma-grid: need step > 0 and hi >= lo");
    const double slop = 1e-9 * std::max(1.0, std::fabs(hi));
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + slop) break;
      grid.push_back(v);
    }
  } else {
    for (const std::string &tok : split_list(spec))
      grid.push_back(parse_double_strict(tok, "--sigma-grid"));
  }
  if (grid.empty()) throw std::invalid_argument("--sigma-grid: empty grid");
  return grid;
}

ordered_json moments_json(const GaussianMoments &m) {
  return {{"mean_ps", m.mean}, {"sigma_ps", m.std_dev}};
}

// ---------------------------------------------------------------- analyze --

int cmd_analyze(const std::string &path, OutputFormat format) {
  const PipelineModel p = load_pipeline_file(path);
  const std::vector<StageDistribution> dists = pipeline_stage_distributions(p);
  const CorrelationMatrix corr = stage_correlation_matrix(p);
  ReduceDiagnostics diag;
  const GaussianMoments total = pipeline_distribution(p, &diag);
  std::vector<GaussianMoments> stage_moments;
  for (const StageDistribution &d : dists) stage_moments.push_back(d.moments);
  const double lower = mean_lower_bound(stage_moments);
  const double area = pipeline_total_area(p);

  if (format == OutputFormat::csv) {
    std::cout << "stage,mean_ps,sigma_ps,sigma_inter_ps,sigma_sys_ps,sigma_rand_ps,area_au\n";
    for (std::size_t i = 0; i < dists.size(); ++i) {
      const StageDistribution &d = dists[i];
      std::cout << csv_row({std::to_string(i + 1), fmt_fixed(d.moments.mean),
                            fmt_fixed(d.moments.std_dev), fmt_fixed(d.sigma_inter),
                            fmt_fixed(d.sigma_sys), fmt_fixed(d.sigma_rand),
                            fmt_fixed(stage_area(p.stages[i]))})
                << "\n";
    }
    std::cout << csv_row({"pipeline", fmt_fixed(total.mean), fmt_fixed(total.std_dev), "",
                          "", "", fmt_fixed(area)})
              << "\n";
    return 0;
  }

  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["stages"] = ordered_json::array();
    for (std::size_t i = 0; i < dists.size(); ++i) {
      const StageDistribution &d = dists[i];
      doc["stages"].push_back({{"stage", i + 1},
                               {"mean_ps", d.moments.mean},
                               {"sigma_ps", d.moments.std_dev},
                               {"sigma_inter_ps", d.sigma_inter},
                               {"sigma_sys_ps", d.sigma_sys},
                               {"sigma_rand_ps", d.sigma_rand},
                               {"area_au", stage_area(p.stages[i])}});
    }
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < corr.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < corr.size(); ++j) row.push_back(corr(i, j));
      rows.push_back(std::move(row));
    }
    doc["correlation_matrix"] = std::move(rows);
    doc["pipeline"] = moments_json(total);
    doc["mean_lower_bound_ps"] = lower;
    doc["total_area_au"] = area;
    doc["diagnostics"] = {{"correlation_clamp_events", diag.clamp_events},
                          {"worst_overshoot", diag.worst_overshoot}};
    emit_structured(doc);
    return 0;
  }

  std::cout << "pipeline: " << p.stages.size() << " stage(s), total area "
            << fmt_fixed(area) << " au\n\n";
  std::cout << pad_right("stage", 6) << pad_left("mean_ps", 14) << pad_left("sigma_ps", 14)
            << pad_left("inter_ps", 14) << pad_left("sys_ps", 14) << pad_left("rand_ps", 14)
            << pad_left("area_au", 14) << "\n";
  for (std::size_t i = 0; i < dists.size(); ++i) {
    const StageDistribution &d = dists[i];
    std::cout << pad_right(std::to_string(i + 1), 6) << pad_left(fmt_fixed(d.moments.mean), 14)
              << pad_left(fmt_fixed(d.moments.std_dev), 14)
              << pad_left(fmt_fixed(d.sigma_inter), 14) << pad_left(fmt_fixed(d.sigma_sys), 14)
              << pad_left(fmt_fixed(d.sigma_rand), 14)
              << pad_left(fmt_fixed(stage_area(p.stages[i])), 14) << "\n";
  }
  std::cout << "\nstage correlation matrix:\n";
  for (std::size_t i = 0; i < corr.size(); ++i) {
    for (std::size_t j = 0; j < corr.size(); ++j)
      std::cout << (j ? " " : "") << fmt_fixed(corr(i, j));
    std::cout << "\n";
  }
  std::cout << "\npipeline delay: mean " << fmt_fixed(total.mean) << " ps, sigma "
            << fmt_fixed(total.std_dev) << " ps\n";
  std::cout << "mean lower bound: " << fmt_fixed(lower) << " ps\n";
  if (diag.clamp_events > 0)
    std::cout << "note: " << diag.clamp_events
              << " correlation propagation clamp(s), worst overshoot "
              << fmt_fixed(diag.worst_overshoot, 9) << "\n";
  return 0;
}

// ------------------------------------------------------------------ yield --

int cmd_yield(const std::string &path, double target, bool independent_only,
              OutputFormat format) {
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("--target must be finite and > 0");
  const PipelineModel p = load_pipeline_file(path);
  std::vector<GaussianMoments> stage_moments;
  for (const StageDistribution &d : pipeline_stage_distributions(p))
    stage_moments.push_back(d.moments);
  const double y_indep = yield_independent(stage_moments, target);
  const GaussianMoments total = pipeline_distribution(p);
  const double y_gauss = yield_gaussian(total, target);

  if (format == OutputFormat::csv) {
    if (independent_only) {
      std::cout << "target_delay_ps,yield_independent\n";
      std::cout << csv_row({fmt_fixed(target), fmt_fixed(y_indep)}) << "\n";
    } else {
      std::cout << "target_delay_ps,yield_gaussian,yield_independent,gap\n";
      std::cout << csv_row({fmt_fixed(target), fmt_fixed(y_gauss), fmt_fixed(y_indep),
                            fmt_fixed(y_indep - y_gauss)})
                << "\n";
    }
    return 0;
  }
  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["target_delay_ps"] = target;
    if (!independent_only) {
      doc["pipeline"] = moments_json(total);
      doc["yield_gaussian"] = y_gauss;
    }
    doc["yield_independent"] = y_indep;
    if (!independent_only) doc["gap_independent_minus_gaussian"] = y_indep - y_gauss;
    emit_structured(doc);
    return 0;
  }
  std::cout << "target delay: " << fmt_fixed(target) << " ps\n";
  if (independent_only) {
    std::cout << "independent-stage yield: " << fmt_fixed(y_indep) << "\n";
    return 0;
  }
  std::cout << "pipeline delay: mean " << fmt_fixed(total.mean) << " ps, sigma "
            << fmt_fixed(total.std_dev) << " ps\n";
  std::cout << "correlated (gaussian) yield: " << fmt_fixed(y_gauss) << "\n";
  std::cout << "independent-stage yield:     " << fmt_fixed(y_indep) << "\n";
  std::cout << "gap (independent - gaussian): " << fmt_fixed(y_indep - y_gauss) << "\n";
  return 0;
}

// ----------------------------------------------------------------- bounds --

int cmd_bounds(const std::string &path, double target, double target_yield,
               const std::string &grid_spec, OutputFormat format) {
  const PipelineModel p = load_pipeline_file(path);
  const YieldQuery q{target, target_yield};
  q.validate();
  const std::vector<double> grid = parse_sigma_grid(grid_spec);

  // The realizable band comes from the smallest/largest sizing of the lead
  // gate: what a chain of such gates can reach.
  GateInstance unit = p.stages.front().gates.front();
  unit.x = unit.min_size;
  const GateMoments lo = gate_delay_moments(unit, p.variation);
  unit.x = unit.max_size;
  const GateMoments hi = gate_delay_moments(unit, p.variation);
  const double ratio = p.variation.total_sigma_ratio;
  ChainEnvelope chain{lo.mean, ratio * lo.mean, hi.mean, ratio * hi.mean};
  const int n_stages = static_cast<int>(p.stages.size());
  const std::vector<DesignSpaceRow> rows = design_space_region(q, n_stages, chain, grid);

  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["target_delay_ps"] = target;
    doc["target_yield"] = target_yield;
    doc["n_stages"] = n_stages;
    doc["chain_envelope"] = {{"mu_min_ps", chain.mu_min},
                             {"sigma_min_ps", chain.sigma_min},
                             {"mu_max_ps", chain.mu_max},
                             {"sigma_max_ps", chain.sigma_max}};
    doc["rows"] = ordered_json::array();
    for (const DesignSpaceRow &r : rows)
      doc["rows"].push_back({{"sigma_ps", r.sigma},
                             {"mu_relaxed_ps", r.mu_relaxed},
                             {"mu_stringent_ps", r.mu_stringent},
                             {"mu_realizable_min_ps", r.mu_band_min},
                             {"mu_realizable_max_ps", r.mu_band_max}});
    emit_structured(doc);
    return 0;
  }
  if (format == OutputFormat::text) {
    std::cout << "target delay " << fmt_fixed(target) << " ps, target yield "
              << fmt_fixed(target_yield) << ", " << n_stages << " stage(s)\n";
    std::cout << "chain envelope: min (" << fmt_fixed(chain.mu_min) << ", "
              << fmt_fixed(chain.sigma_min) << ") ps, max (" << fmt_fixed(chain.mu_max)
              << ", " << fmt_fixed(chain.sigma_max) << ") ps\n\n";
    std::cout << pad_left("sigma_ps", 12) << pad_left("mu_relaxed_ps", 16)
              << pad_left("mu_stringent_ps", 18) << pad_left("mu_real_min_ps", 16)
              << pad_left("mu_real_max_ps", 16) << "\n";
    for (const DesignSpaceRow &r : rows)
      std::cout << pad_left(fmt_fixed(r.sigma), 12) << pad_left(fmt_fixed(r.mu_relaxed), 16)
                << pad_left(fmt_fixed(r.mu_stringent), 18)
                << pad_left(fmt_fixed(r.mu_band_min), 16)
                << pad_left(fmt_fixed(r.mu_band_max), 16) << "\n";
    return 0;
  }
  std::cout << "sigma_ps,mu_relaxed_ps,mu_stringent_ps,mu_realizable_min_ps,mu_realizable_max_ps\n";
  for (const DesignSpaceRow &r : rows)
    std::cout << csv_row({fmt_fixed(r.sigma), fmt_fixed(r.mu_relaxed),
                          fmt_fixed(r.mu_stringent), fmt_fixed(r.mu_band_min),
                          fmt_fixed(r.mu_band_max)})
              << "\n";
  return 0;
}

// --------------------------------------------------------------------- mc --

void write_histogram(const std::string &path, const std::vector<double> &maxima,
                     const GaussianMoments &analytical) {
  const auto [mn_it, mx_it] = std::minmax_element(maxima.begin(), maxima.end());
  const double mn = *mn_it;
  const double span = std::max(*mx_it - mn, 1e-9);
  constexpr int kBins = 60;
  const double width = span / kBins;
  std::vector<std::size_t> counts(kBins, 0);
  for (double v : maxima) {
    int b = static_cast<int>((v - mn) / width);
    counts[std::clamp(b, 0, kBins - 1)]++;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot open histogram file for writing");
  out << "bin_center_ps,empirical_density,model_density\n";
  const double n = static_cast<double>(maxima.size());
  for (int b = 0; b < kBins; ++b) {
    const double center = mn + (b + 0.5) * width;
    const double emp = static_cast<double>(counts[b]) / (n * width);
    const double model =
        (analytical.std_dev > 0.0)
            ? std_normal_pdf((center - analytical.mean) / analytical.std_dev) /
                  analytical.std_dev
            : 0.0;
    out << csv_row({fmt_fixed(center), fmt_fixed(emp, 9), fmt_fixed(model, 9)}) << "\n";
  }
  if (!out) throw std::runtime_error(path + ": histogram write failed");
}

int cmd_mc(const std::string &path, double target, std::uint64_t samples,
           std::uint64_t seed, std::uint64_t batch, const std::string &histogram_path,
           bool serial, OutputFormat format) {
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("--target must be finite and > 0");
  const PipelineModel p = load_pipeline_file(path);
  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.batch_size = batch;

  McReport rep;
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.analytical = pipeline_distribution(p);
  rep.analytical_yield = yield_gaussian(rep.analytical, target);
  const SampleMatrix m =
      serial ? sample_stage_delays_serial(p, cfg) : sample_stage_delays(p, cfg);
  const MaxStats stats = empirical_max_stats(m, target);
  rep.empirical = stats.moments;
  rep.empirical_yield = stats.yield;
  rep.mean_error_pct =
      std::fabs(rep.analytical.mean - rep.empirical.mean) / rep.empirical.mean * 100.0;
  rep.sigma_error_pct = std::fabs(rep.analytical.std_dev - rep.empirical.std_dev) /
                        rep.empirical.std_dev * 100.0;
  rep.standard_error_mean =
      rep.empirical.std_dev / std::sqrt(static_cast<double>(cfg.samples));

  if (!histogram_path.empty()) write_histogram(histogram_path, row_maxima(m), rep.analytical);

  if (format == OutputFormat::csv) {
    std::cout << "samples,seed,analytical_mean_ps,analytical_sigma_ps,analytical_yield,"
                 "empirical_mean_ps,empirical_sigma_ps,empirical_yield,mean_error_pct,"
                 "sigma_error_pct,standard_error_mean_ps\n";
    std::cout << csv_row({std::to_string(rep.samples), std::to_string(rep.seed),
                          fmt_fixed(rep.analytical.mean), fmt_fixed(rep.analytical.std_dev),
                          fmt_fixed(rep.analytical_yield), fmt_fixed(rep.empirical.mean),
                          fmt_fixed(rep.empirical.std_dev), fmt_fixed(rep.empirical_yield),
                          fmt_fixed(rep.mean_error_pct), fmt_fixed(rep.sigma_error_pct),
                          fmt_fixed(rep.standard_error_mean)})
              << "\n";
    return 0;
  }
  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["samples"] = rep.samples;
    doc["seed"] = rep.seed;
    doc["target_delay_ps"] = target;
    doc["analytical"] = moments_json(rep.analytical);
    doc["analytical_yield"] = rep.analytical_yield;
    doc["empirical"] = moments_json(rep.empirical);
    doc["empirical_yield"] = rep.empirical_yield;
    doc["mean_error_pct"] = rep.mean_error_pct;
    doc["sigma_error_pct"] = rep.sigma_error_pct;
    doc["standard_error_mean_ps"] = rep.standard_error_mean;
    emit_structured(doc);
    return 0;
  }
  std::cout << "samples: " << rep.samples << " (seed " << rep.seed << ")\n";
  std::cout << "target delay: " << fmt_fixed(target) << " ps\n";
  std::cout << "analytical: mean " << fmt_fixed(rep.analytical.mean) << " ps, sigma "
            << fmt_fixed(rep.analytical.std_dev) << " ps, yield "
            << fmt_fixed(rep.analytical_yield) << "\n";
  std::cout << "empirical:  mean " << fmt_fixed(rep.empirical.mean) << " ps, sigma "
            << fmt_fixed(rep.empirical.std_dev) << " ps, yield "
            << fmt_fixed(rep.empirical_yield) << "\n";
  std::cout << "mean error:  " << fmt_fixed(rep.mean_error_pct) << " %\n";
  std::cout << "sigma error: " << fmt_fixed(rep.sigma_error_pct) << " %\n";
  std::cout << "standard error of mean: " << fmt_fixed(rep.standard_error_mean) << " ps\n";
  return 0;
}

// ------------------------------------------------------------------ sweep --

VariationSpec regime_variation(const std::string &name, double ratio, double corr_length) {
  VariationSpec v;
  v.total_sigma_ratio = ratio;
  v.spatial_corr_length = corr_length;
  if (name == "random") {
    v.inter_die_fraction = 0.0;
    v.systematic_fraction = 0.0;
    v.random_fraction = 1.0;
  } else if (name == "inter") {
    v.inter_die_fraction = 1.0;
    v.systematic_fraction = 0.0;
    v.random_fraction = 0.0;
  } else if (name == "mixed") {
    v.inter_die_fraction = 0.5;
    v.systematic_fraction = 0.25;
    v.random_fraction = 0.25;
  } else {
    throw std::invalid_argument("--regimes: unknown regime '" + name +
                                "' (expected random, inter, or mixed)");
  }
  return v;
}

int cmd_sweep(int levels, const std::string &stages_list, const std::string &regimes_list,
              std::uint64_t samples, std::uint64_t seed, double latch, double sigma_ratio,
              double corr_length, double spacing, OutputFormat format) {
  SweepSpec spec;
  spec.total_levels = levels;
  for (const std::string &tok : split_list(stages_list)) {
    const double v = parse_double_strict(tok, "--stages");
    const int n = static_cast<int>(v);
    if (v != n) throw std::invalid_argument("--stages: stage counts must be integers");
    spec.stage_counts.push_back(n);
  }
  for (const std::string &name : split_list(regimes_list))
    spec.regimes.push_back({name, regime_variation(name, sigma_ratio, corr_length)});
  spec.unit_gate = GateInstance{5.0, 5.0, 1.0, 1.0, 1.0, 1.0};
  spec.latch_overhead = latch;
  spec.stage_spacing = spacing;

  McConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  const std::vector<SweepRow> rows = run_sweep(spec, cfg);

  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["total_levels"] = spec.total_levels;
    doc["samples"] = samples;
    doc["seed"] = seed;
    doc["rows"] = ordered_json::array();
    for (const SweepRow &r : rows)
      doc["rows"].push_back({{"regime", r.regime},
                             {"n_stages", r.n_stages},
                             {"logic_depth", r.logic_depth},
                             {"analytical", moments_json(r.analytical)},
                             {"analytical_ratio", r.analytical_ratio},
                             {"empirical", moments_json(r.empirical)},
                             {"empirical_ratio", r.empirical_ratio}});
    emit_structured(doc);
    return 0;
  }
  if (format == OutputFormat::text) {
    std::cout << "levels: " << spec.total_levels << ", samples: " << samples << " (seed "
              << seed << ")\n\n";
    std::cout << pad_right("regime", 8) << pad_left("n_stages", 9) << pad_left("depth", 7)
              << pad_left("an_mean_ps", 14) << pad_left("an_sigma_ps", 14)
              << pad_left("an_ratio", 12) << pad_left("mc_mean_ps", 14)
              << pad_left("mc_sigma_ps", 14) << pad_left("mc_ratio", 12) << "\n";
    for (const SweepRow &r : rows)
      std::cout << pad_right(r.regime, 8) << pad_left(std::to_string(r.n_stages), 9)
                << pad_left(std::to_string(r.logic_depth), 7)
                << pad_left(fmt_fixed(r.analytical.mean), 14)
                << pad_left(fmt_fixed(r.analytical.std_dev), 14)
                << pad_left(fmt_fixed(r.analytical_ratio), 12)
                << pad_left(fmt_fixed(r.empirical.mean), 14)
                << pad_left(fmt_fixed(r.empirical.std_dev), 14)
                << pad_left(fmt_fixed(r.empirical_ratio), 12) << "\n";
    return 0;
  }
  std::cout << "regime,n_stages,logic_depth,analytical_mean_ps,analytical_sigma_ps,"
               "analytical_ratio,empirical_mean_ps,empirical_sigma_ps,empirical_ratio\n";
  for (const SweepRow &r : rows)
    std::cout << csv_row({r.regime, std::to_string(r.n_stages),
                          std::to_string(r.logic_depth), fmt_fixed(r.analytical.mean),
                          fmt_fixed(r.analytical.std_dev), fmt_fixed(r.analytical_ratio),
                          fmt_fixed(r.empirical.mean), fmt_fixed(r.empirical.std_dev),
                          fmt_fixed(r.empirical_ratio)})
              << "\n";
  return 0;
}

// --------------------------------------------------------------- optimize --

int cmd_optimize(const std::string &path, double target, double target_yield,
                 const std::string &mode, std::string out_path,
                 std::optional<std::uint64_t> verify_seed, std::uint64_t verify_samples,
                 OutputFormat format) {
  if (mode != "ensure-yield" && mode != "min-area")
    throw std::invalid_argument("--mode must be ensure-yield or min-area");
  const PipelineModel input = load_pipeline_file(path);
  const YieldQuery q{target, target_yield};
  q.validate();
  if (out_path.empty()) out_path = path + ".sized.json";

  const double input_area = pipeline_total_area(input);
  const double input_yield = yield_gaussian(pipeline_distribution(input), target);
  const SizingSolution balanced = balanced_baseline(input, q);
  const SizingSolution solution = global_optimize(input, q);
  const PipelineModel sized = apply_sizes(input, solution.sizes);
  save_pipeline_file(sized, out_path);

  std::optional<double> verified_yield;
  if (verify_seed) {
    McConfig cfg;
    cfg.samples = verify_samples;
    cfg.seed = *verify_seed;
    const SampleMatrix m = sample_stage_delays(sized, cfg);
    verified_yield = empirical_max_stats(m, target).yield;
  }

  const GaussianMoments dist = pipeline_distribution(sized);

  if (format == OutputFormat::csv) {
    std::cout << "stage,mean_ps,sigma_ps,area_au,yield,feasible,verify_samples,verify_seed,"
                 "verify_yield\n";
    for (std::size_t i = 0; i < solution.per_stage.size(); ++i)
      std::cout << csv_row({std::to_string(i + 1), fmt_fixed(solution.per_stage[i].mean),
                            fmt_fixed(solution.per_stage[i].std_dev),
                            fmt_fixed(stage_area(sized.stages[i])), "", "", "", "", ""})
                << "\n";
    std::cout << csv_row({"pipeline", fmt_fixed(dist.mean), fmt_fixed(dist.std_dev),
                          fmt_fixed(solution.total_area), fmt_fixed(solution.achieved_yield),
                          solution.feasible ? "1" : "0",
                          verify_seed ? std::to_string(verify_samples) : "",
                          verify_seed ? std::to_string(*verify_seed) : "",
                          verified_yield ? fmt_fixed(*verified_yield) : ""})
              << "\n";
    return solution.feasible ? 0 : 2;
  }

  if (format == OutputFormat::structured) {
    ordered_json doc;
    doc["mode"] = mode;
    doc["target_delay_ps"] = target;
    doc["target_yield"] = target_yield;
    doc["input"] = {{"total_area_au", input_area}, {"yield", input_yield}};
    doc["balanced_baseline"] = {{"total_area_au", balanced.total_area},
                                {"yield", balanced.achieved_yield},
                                {"feasible", balanced.feasible}};
    ordered_json stages = ordered_json::array();
    for (std::size_t i = 0; i < solution.per_stage.size(); ++i)
      stages.push_back({{"stage", i + 1},
                        {"mean_ps", solution.per_stage[i].mean},
                        {"sigma_ps", solution.per_stage[i].std_dev},
                        {"area_au", stage_area(sized.stages[i])},
                        {"sizes", solution.sizes[i]}});
    doc["optimized"] = {{"total_area_au", solution.total_area},
                        {"yield", solution.achieved_yield},
                        {"feasible", solution.feasible},
                        {"iterations", solution.iterations},
                        {"pipeline", moments_json(dist)},
                        {"stages", std::move(stages)}};
    if (verified_yield)
      doc["verification"] = {{"samples", verify_samples},
                             {"seed", *verify_seed},
                             {"empirical_yield", *verified_yield}};
    doc["output_file"] = out_path;
    emit_structured(doc);
    return solution.feasible ? 0 : 2;
  }

  std::cout << "mode: " << mode << ", target " << fmt_fixed(target) << " ps, yield "
            << fmt_fixed(target_yield) << "\n";
  std::cout << "input design:      area " << fmt_fixed(input_area) << " au, yield "
            << fmt_fixed(input_yield) << "\n";
  std::cout << "balanced baseline: area " << fmt_fixed(balanced.total_area) << " au, yield "
            << fmt_fixed(balanced.achieved_yield) << "\n";
  std::cout << "optimized:         area " << fmt_fixed(solution.total_area) << " au, yield "
            << fmt_fixed(solution.achieved_yield) << " ("
            << (solution.feasible ? "feasible" : "infeasible") << ", "
            << solution.iterations << " pass(es))\n\n";
  std::cout << pad_right("stage", 6) << pad_left("mean_ps", 14) << pad_left("sigma_ps", 14)
            << pad_left("area_au", 14) << "\n";
  for (std::size_t i = 0; i < solution.per_stage.size(); ++i)
    std::cout << pad_right(std::to_string(i + 1), 6)
              << pad_left(fmt_fixed(solution.per_stage[i].mean), 14)
              << pad_left(fmt_fixed(solution.per_stage[i].std_dev), 14)
              << pad_left(fmt_fixed(stage_area(sized.stages[i])), 14) << "\n";
  std::cout << "\npipeline delay: mean " << fmt_fixed(dist.mean) << " ps, sigma "
            << fmt_fixed(dist.std_dev) << " ps\n";
  if (mode == "ensure-yield")
    std::cout << "yield lift: " << fmt_fixed(input_yield) << " -> "
              << fmt_fixed(solution.achieved_yield) << ", area change "
              << fmt_fixed((solution.total_area / input_area - 1.0) * 100.0) << " %\n";
  else
    std::cout << "area vs balanced baseline: "
              << fmt_fixed((solution.total_area / balanced.total_area - 1.0) * 100.0)
              << " %\n";
  if (verified_yield)
    std::cout << "verification: samples " << verify_samples << ", seed " << *verify_seed
              << ", empirical yield " << fmt_fixed(*verified_yield) << "\n";
  std::cout << "sized pipeline written: " << out_path << "\n";
  return solution.feasible ? 0 : 2;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"statistical pipeline timing, parametric yield, and gate sizing"};
  app.require_subcommand(1);

  std::string file, format_name = "text";
  double target = 0.0, target_yield = 0.0;

  CLI::App *analyze = app.add_subcommand("analyze", "per-stage and pipeline delay moments");
  analyze->add_option("file", file, "pipeline description (JSON)")->required();
  analyze->add_option("--format", format_name, "text | csv | structured");

  CLI::App *yield_cmd = app.add_subcommand("yield", "parametric yield at a target period");
  bool independent_only = false;
  yield_cmd->add_option("file", file, "pipeline description (JSON)")->required();
  yield_cmd->add_option("--target", target, "target clock period, ps")->required();
  yield_cmd->add_flag("--independent", independent_only,
                      "report only the independent-stage estimate");
  yield_cmd->add_option("--format", format_name, "text | csv | structured");

  CLI::App *bounds = app.add_subcommand("bounds", "per-stage design-space boundaries");
  std::string sigma_grid;
  std::string bounds_format = "csv";
  bounds->add_option("file", file, "pipeline description (JSON)")->required();
  bounds->add_option("--target", target, "target clock period, ps")->required();
  bounds->add_option("--yield", target_yield, "target yield in (0, 1)")->required();
  bounds->add_option("--sigma-grid", sigma_grid, "lo:hi:step or comma-separated values")
      ->required();
  bounds->add_option("--format", bounds_format, "text | csv | structured");

  CLI::App *mc = app.add_subcommand("mc", "Monte-Carlo validation of the analytical model");
  std::uint64_t samples = 100000, seed = 42, batch = 8192;
  std::string histogram_path;
  bool serial = false;
  mc->add_option("file", file, "pipeline description (JSON)")->required();
  mc->add_option("--target", target, "target clock period, ps")->required();
  mc->add_option("--samples", samples, "sample count");
  mc->add_option("--seed", seed, "random seed");
  mc->add_option("--batch", batch, "scheduling batch size (result-invariant)");
  mc->add_option("--histogram", histogram_path, "write a density-overlay CSV here");
  mc->add_flag("--serial", serial, "use the single-threaded reference sampler");
  mc->add_option("--format", format_name, "text | csv | structured");

  CLI::App *sweep = app.add_subcommand("sweep", "depth vs stage-count variability sweep");
  int levels = 120;
  std::string stages_list = "2,3,4,5,6,8,10,12,15,20";
  std::string regimes_list = "random,inter,mixed";
  std::string sweep_format = "csv";
  double latch = 5.0, sigma_ratio = 0.1, corr_length = 10.0, spacing = 1.0;
  std::uint64_t sweep_samples = 100000, sweep_seed = 42;
  sweep->add_option("--levels", levels, "total logic levels, constant across the sweep");
  sweep->add_option("--stages", stages_list, "comma-separated stage counts");
  sweep->add_option("--regimes", regimes_list, "subset of random,inter,mixed");
  sweep->add_option("--samples", sweep_samples, "Monte-Carlo sample count");
  sweep->add_option("--seed", sweep_seed, "random seed");
  sweep->add_option("--latch", latch, "latch overhead per stage, ps");
  sweep->add_option("--sigma-ratio", sigma_ratio, "per-gate sigma/mean ratio");
  sweep->add_option("--corr-length", corr_length, "systematic correlation length");
  sweep->add_option("--spacing", spacing, "distance between adjacent stages");
  sweep->add_option("--format", sweep_format, "text | csv | structured");

  CLI::App *optimize = app.add_subcommand("optimize", "size gates for yield at minimum area");
  std::string mode = "ensure-yield", out_path;
  std::uint64_t verify_seed_value = 42, verify_samples = 100000;
  optimize->add_option("file", file, "pipeline description (JSON)")->required();
  optimize->add_option("--target", target, "target clock period, ps")->required();
  optimize->add_option("--yield", target_yield, "target yield in (0, 1)")->required();
  optimize->add_option("--mode", mode, "ensure-yield | min-area");
  optimize->add_option("--out", out_path, "sized pipeline output (default <file>.sized.json)");
  CLI::Option *verify_opt = optimize->add_option(
      "--seed-verify", verify_seed_value, "run a Monte-Carlo confirmation with this seed");
  optimize->add_option("--verify-samples", verify_samples,
                       "sample count for --seed-verify");
  optimize->add_option("--format", format_name, "text | csv | structured");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(file, parse_output_format(format_name));
    if (yield_cmd->parsed())
      return cmd_yield(file, target, independent_only, parse_output_format(format_name));
    if (bounds->parsed())
      return cmd_bounds(file, target, target_yield, sigma_grid,
                        parse_output_format(bounds_format));
    if (mc->parsed())
      return cmd_mc(file, target, samples, seed, batch, histogram_path, serial,
                    parse_output_format(format_name));
    if (sweep->parsed())
      return cmd_sweep(levels, stages_list, regimes_list, sweep_samples, sweep_seed, latch,
                       sigma_ratio, corr_length, spacing, parse_output_format(sweep_format));
    if (optimize->parsed()) {
      std::optional<std::uint64_t> verify_seed;
      if (verify_opt->count()) verify_seed = verify_seed_value;
      return cmd_optimize(file, target, target_yield, mode, out_path, verify_seed,
                          verify_samples, parse_output_format(format_name));
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
