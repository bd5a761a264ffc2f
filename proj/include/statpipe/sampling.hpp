// Correlated-Gaussian Monte-Carlo oracle for pipeline delays.
#pragma once

#include <cstdint>
#include <vector>

#include "statpipe/types.hpp"
#include "statpipe/variation.hpp"
#include "statpipe/yield.hpp"

namespace statpipe {

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 42;
  std::uint64_t batch_size = 8192;  // scheduling granularity only
};

// Row-major samples x stages matrix of stage delays.
struct SampleMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Eigenvalue-clamp repair: eigenvalues in [-1e-8, 1e-10) raised to 1e-10,
// diagonal renormalized to 1.  Throws std::runtime_error if an eigenvalue
// falls below -1e-8 (matrix is not a plausible correlation matrix).
CorrelationMatrix repair_to_psd(const CorrelationMatrix &c);

// Lower-triangular factor L with C = L*L^T for PSD C; pivots below 1e-9
// zero their column so rank-deficient matrices (e.g. the all-ones matrix)
// factor exactly.  Row-major n*n, upper part zero.
std::vector<double> semidefinite_cholesky(const CorrelationMatrix &c);

// One row per die: jointly Gaussian stage delays with moments from
// stage_distribution and correlations from stage_correlation_matrix (after
// repair).  Deterministic for a fixed config; parallelises over batches when
// OpenMP is enabled without changing a single bit of the result.
SampleMatrix sample_stage_delays(const PipelineModel &p, const McConfig &cfg);

// Reference single-threaded path; bit-identical to sample_stage_delays.
SampleMatrix sample_stage_delays_serial(const PipelineModel &p, const McConfig &cfg);

struct MaxStats {
  GaussianMoments moments;  // sample mean and unbiased sigma of the row max
  double yield = 0.0;       // fraction of rows with max < t
};

MaxStats empirical_max_stats(const SampleMatrix &samples, double t);

// Per-row maxima in row order (for histograms and custom post-processing).
std::vector<double> row_maxima(const SampleMatrix &samples);

struct McReport {
  GaussianMoments empirical;
  double empirical_yield = 0.0;
  GaussianMoments analytical;
  double analytical_yield = 0.0;
  double mean_error_pct = 0.0;   // |analytical - empirical| / empirical * 100
  double sigma_error_pct = 0.0;
  double standard_error_mean = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Analytical path (pipeline_distribution + yield_gaussian) against the
// empirical path on the same model.
McReport model_error_report(const PipelineModel &p, const YieldQuery &q,
                            const McConfig &cfg);

}  // namespace statpipe
