// Standard-normal density, distribution and quantile kernels.
#pragma once

namespace statpipe {

// (2*pi)^(-1/2) * exp(-x^2/2).
double std_normal_pdf(double x);

// Absolute error <= 1e-10 over the full double range; strictly increasing,
// result in (0, 1).
double std_normal_cdf(double x);

// Inverse of std_normal_cdf to |cdf(result) - p| <= 1e-8.
// Throws std::domain_error unless 0 < p < 1.
double std_normal_quantile(double p);

}  // namespace statpipe
