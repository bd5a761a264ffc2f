#include "statpipe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Dense>

#include "statpipe/rng.hpp"

namespace statpipe {

namespace {

constexpr double kEigenvalueFloor = 1e-10;
constexpr double kEigenvalueAbort = -1e-8;
constexpr double kPivotZero = 1e-9;
constexpr double kPivotAbort = -1e-6;
constexpr std::size_t kMaxMatrixBytes = std::size_t{4} << 30;

Eigen::MatrixXd to_eigen(const CorrelationMatrix &c) {
  const std::size_t n = c.size();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c(i, j);
  return m;
}

}  // namespace

CorrelationMatrix repair_to_psd(const CorrelationMatrix &c) {
  const std::size_t n = c.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(c));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("psd repair: eigendecomposition failed");
  Eigen::VectorXd evals = solver.eigenvalues();
  if (evals.minCoeff() < kEigenvalueAbort)
    throw std::runtime_error("psd repair: matrix is too far from positive semidefinite");
  if (evals.minCoeff() >= kEigenvalueFloor) return c;
  for (Eigen::Index i = 0; i < evals.size(); ++i)
    if (evals[i] < kEigenvalueFloor) evals[i] = kEigenvalueFloor;
  const Eigen::MatrixXd repaired =
      solver.eigenvectors() * evals.asDiagonal() * solver.eigenvectors().transpose();
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      // Renormalize so the diagonal is exactly 1 again.
      rows[i][j] = repaired(i, j) / std::sqrt(repaired(i, i) * repaired(j, j));
    }
  }
  // Symmetrize: the scaled off-diagonals can disagree in the last ulp.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = std::clamp(0.5 * (rows[i][j] + rows[j][i]), -1.0, 1.0);
      rows[i][j] = r;
      rows[j][i] = r;
    }
  return CorrelationMatrix::from_rows(rows);
}

std::vector<double> semidefinite_cholesky(const CorrelationMatrix &c) {
  const std::size_t n = c.size();
  std::vector<double> l(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double d = c(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
    if (d < kPivotAbort)
      throw std::runtime_error("cholesky: matrix is not positive semidefinite");
    if (d < kPivotZero) {
      // Rank deficiency: this column is linearly dependent on earlier ones.
      continue;
    }
    const double root = std::sqrt(d);
    l[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = c(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
      l[i * n + j] = s / root;
    }
  }
  return l;
}

namespace {

struct SamplePlan {
  std::size_t n_stages = 0;
  std::vector<double> means;
  std::vector<double> sigmas;
  std::vector<double> factor;  // row-major lower-triangular n x n
};

SamplePlan make_plan(const PipelineModel &p) {
  p.validate();
  SamplePlan plan;
  const std::vector<StageDistribution> dists = pipeline_stage_distributions(p);
  plan.n_stages = dists.size();
  plan.means.reserve(plan.n_stages);
  plan.sigmas.reserve(plan.n_stages);
  for (const StageDistribution &d : dists) {
    plan.means.push_back(d.moments.mean);
    plan.sigmas.push_back(d.moments.std_dev);
  }
  plan.factor = semidefinite_cholesky(repair_to_psd(stage_correlation_matrix(p)));
  return plan;
}

// delay[row][i] = mean_i + sigma_i * (L z)_i with z the row's iid normals.
inline void fill_rows(const SamplePlan &plan, std::uint64_t seed, std::size_t row_begin,
                      std::size_t row_end, double *z, double *out) {
  const std::size_t n = plan.n_stages;
  for (std::size_t r = row_begin; r < row_end; ++r) {
    fill_row_std_normals(seed, r, z, n);
    double *row = out + r * n;
    for (std::size_t i = 0; i < n; ++i) {
      double x = 0.0;
      const double *li = plan.factor.data() + i * n;
      for (std::size_t k = 0; k <= i; ++k) x += li[k] * z[k];
      row[i] = plan.means[i] + plan.sigmas[i] * x;
    }
  }
}

SampleMatrix sample_impl(const PipelineModel &p, const McConfig &cfg, bool parallel) {
  if (cfg.samples == 0) throw std::invalid_argument("sampling: samples must be > 0");
  const SamplePlan plan = make_plan(p);
  const std::size_t rows = static_cast<std::size_t>(cfg.samples);
  const std::size_t cols = plan.n_stages;
  if (rows > kMaxMatrixBytes / sizeof(double) / cols)
    throw std::invalid_argument("sampling: sample matrix would exceed 4 GiB");

  SampleMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.data.assign(rows * cols, 0.0);

  const std::size_t batch = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::max<std::uint64_t>(1, cfg.batch_size)));
  const std::size_t n_batches = (rows + batch - 1) / batch;

  // Rows touch disjoint output ranges and the RNG is keyed per row, so the
  // schedule cannot affect the result.
#pragma omp parallel if (parallel)
  {
    std::vector<double> z(cols);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_batches); ++b) {
      const std::size_t begin = static_cast<std::size_t>(b) * batch;
      const std::size_t end = std::min(rows, begin + batch);
      fill_rows(plan, cfg.seed, begin, end, z.data(), m.data.data());
    }
  }
  return m;
}

}  // namespace

SampleMatrix sample_stage_delays(const PipelineModel &p, const McConfig &cfg) {
  return sample_impl(p, cfg, true);
}

SampleMatrix sample_stage_delays_serial(const PipelineModel &p, const McConfig &cfg) {
  return sample_impl(p, cfg, false);
}

std::vector<double> row_maxima(const SampleMatrix &samples) {
  if (samples.rows == 0 || samples.cols == 0)
    throw std::invalid_argument("row maxima: empty sample matrix");
  std::vector<double> maxima(samples.rows);
  for (std::size_t r = 0; r < samples.rows; ++r) {
    double mx = samples.at(r, 0);
    for (std::size_t c = 1; c < samples.cols; ++c) mx = std::max(mx, samples.at(r, c));
    maxima[r] = mx;
  }
  return maxima;
}

MaxStats empirical_max_stats(const SampleMatrix &samples, double t) {
  const std::vector<double> maxima = row_maxima(samples);
  const double n = static_cast<double>(maxima.size());
  double sum = 0.0;
  std::size_t below = 0;
  for (double v : maxima) {
    sum += v;
    if (v < t) ++below;
  }
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : maxima) ss += (v - mean) * (v - mean);
  MaxStats stats;
  stats.moments.mean = mean;
  stats.moments.std_dev = (maxima.size() > 1) ? std::sqrt(ss / (n - 1.0)) : 0.0;
  stats.yield = static_cast<double>(below) / n;
  return stats;
}

McReport model_error_report(const PipelineModel &p, const YieldQuery &q,
                            const McConfig &cfg) {
  q.validate();
  McReport rep;
  rep.samples = cfg.samples;
  rep.seed = cfg.seed;
  rep.analytical = pipeline_distribution(p);
  rep.analytical_yield = yield_gaussian(rep.analytical, q.target_delay);
  const SampleMatrix samples = sample_stage_delays(p, cfg);
  const MaxStats stats = empirical_max_stats(samples, q.target_delay);
  rep.empirical = stats.moments;
  rep.empirical_yield = stats.yield;
  rep.mean_error_pct =
      std::fabs(rep.analytical.mean - rep.empirical.mean) / rep.empirical.mean * 100.0;
  rep.sigma_error_pct = std::fabs(rep.analytical.std_dev - rep.empirical.std_dev) /
                        rep.empirical.std_dev * 100.0;
  rep.standard_error_mean =
      rep.empirical.std_dev / std::sqrt(static_cast<double>(cfg.samples));
  return rep;
}

}  // namespace statpipe
