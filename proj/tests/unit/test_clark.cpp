#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "statpipe/clark.hpp"
#include "statpipe/yield.hpp"
#include "support/oracles.hpp"

using statpipe::ClarkPairResult;
using statpipe::clark_max_pair;
using statpipe::clark_corr_propagate;
using statpipe::CorrelationMatrix;
using statpipe::GaussianMoments;
using statpipe::max_reduce;
using statpipe::ReduceDiagnostics;

TEST_CASE("pair max of two standard normals has the classic moments") {
  // max(Z1, Z2) iid: mean = 1/sqrt(pi), sd = sqrt(1 - 1/pi).
  const ClarkPairResult r = clark_max_pair({0.0, 1.0}, {0.0, 1.0}, 0.0);
  CHECK(r.moments.mean == doctest::Approx(0.5641895835477563).epsilon(4e-15));
  CHECK(r.moments.std_dev == doctest::Approx(0.8256452711765563).epsilon(4e-15));
  CHECK(r.spread == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.alpha == 0.0);
}

TEST_CASE("pair max with separated means") {
  const ClarkPairResult r = clark_max_pair({0.0, 1.0}, {3.0, 1.0}, 0.0);
  CHECK(r.moments.mean == doctest::Approx(3.008622864324781).epsilon(4e-15));
  CHECK(r.moments.std_dev == doctest::Approx(0.986943287750868).epsilon(4e-15));
}

TEST_CASE("fully correlated equal-sigma pair degenerates to the wider input") {
  const ClarkPairResult r = clark_max_pair({1.0, 2.0}, {3.0, 2.0}, 1.0);
  CHECK(r.moments.mean == 3.0);
  CHECK(r.moments.std_dev == 2.0);
  CHECK(r.alpha == 0.0);

  // Exact tie prefers the second argument; moments are identical either way.
  const ClarkPairResult tie = clark_max_pair({2.0, 1.5}, {2.0, 1.5}, 1.0);
  CHECK(tie.moments.mean == 2.0);
  CHECK(tie.moments.std_dev == 1.5);

  // max(X, X) is X.
  const ClarkPairResult same = clark_max_pair({5.0, 0.7}, {5.0, 0.7}, 1.0);
  CHECK(same.moments.mean == 5.0);
  CHECK(same.moments.std_dev == 0.7);
}

TEST_CASE("pair max commutes and dominates both inputs") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> um(-5.0, 10.0), us(0.2, 3.0),
      ur(-0.95, 0.95);
  for (int i = 0; i < 200; ++i) {
    const GaussianMoments a{um(gen), us(gen)};
    const GaussianMoments b{um(gen), us(gen)};
    const double rho = ur(gen);
    const ClarkPairResult ab = clark_max_pair(a, b, rho);
    const ClarkPairResult ba = clark_max_pair(b, a, rho);
    CHECK(ab.moments.mean ==
          doctest::Approx(ba.moments.mean).epsilon(1e-12));
    CHECK(ab.moments.std_dev ==
          doctest::Approx(ba.moments.std_dev).epsilon(1e-12));
    CHECK(ab.spread == doctest::Approx(ba.spread).epsilon(1e-12));
    CHECK(ab.alpha == doctest::Approx(-ba.alpha).epsilon(1e-12));
    // E[max] >= max of means, and the variance stays non-negative.
    CHECK(ab.moments.mean >= std::max(a.mean, b.mean) - 1e-12);
    CHECK(ab.moments.std_dev >= 0.0);
  }
}

TEST_CASE("pair moments match a large Monte-Carlo oracle") {
  struct Case {
    double ma, sa, mb, sb, rho;
  };
  const std::vector<Case> cases = {{0.0, 1.0, 0.0, 1.0, 0.0},
                                   {0.0, 1.0, 0.5, 2.0, -0.9},
                                   {2.0, 0.5, 1.0, 1.5, 0.9},
                                   {-1.0, 2.0, 1.0, 0.3, 0.5}};
  const std::size_t n = 2000000;
  std::uint64_t seed = 1000;
  for (const Case &c : cases) {
    const std::vector<double> m =
        oracle::sample_pair_max(c.ma, c.sa, c.mb, c.sb, c.rho, n, seed++);
    const oracle::Summary s = oracle::summarize(m);
    const ClarkPairResult r =
        clark_max_pair({c.ma, c.sa}, {c.mb, c.sb}, c.rho);
    const double se_mean = s.sd / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(r.moments.mean - s.mean) <= 5.0 * se_mean);
    // sd of the sample sd is about sd/sqrt(2n) for near-Gaussian data; the
    // max is skewed, so allow a small relative slack on top.
    CHECK(std::fabs(r.moments.std_dev - s.sd) <=
          5.0 * s.sd / std::sqrt(2.0 * static_cast<double>(n)) + 0.004 * s.sd);
  }
}

TEST_CASE("correlation propagation") {
  // Near-deterministic max: correlation falls back to the winning input.
  const ClarkPairResult deg = clark_max_pair({0.0, 0.0}, {1.0, 0.0}, 0.0);
  CHECK(clark_corr_propagate(2.0, 0.3, 0.8, deg, 0.0, 0.0) == 0.8);

  // A fully correlated equal-sigma pair collapses to alpha = 0; any
  // consistent correlation matrix then has rho_ka == rho_kb, and the
  // half-half weighting reproduces it exactly.
  const ClarkPairResult collapsed = clark_max_pair({0.0, 1.0}, {1.0, 1.0}, 1.0);
  CHECK(clark_corr_propagate(2.0, 0.6, 0.6, collapsed, 1.0, 1.0) == 0.6);

  // Uncorrelated third variable stays uncorrelated.
  const ClarkPairResult r = clark_max_pair({0.0, 1.0}, {0.5, 1.5}, 0.2);
  CHECK(clark_corr_propagate(1.0, 0.0, 0.0, r, 1.0, 1.5) == 0.0);

  // sigma_k cancels.
  const double lo = clark_corr_propagate(0.1, 0.4, 0.6, r, 1.0, 1.5);
  const double hi = clark_corr_propagate(10.0, 0.4, 0.6, r, 1.0, 1.5);
  CHECK(lo == hi);

  // Anti-correlated pair shrinks sigma_max below either input, which can push
  // the raw propagated value above 1: it must clamp and report the excess.
  const ClarkPairResult anti = clark_max_pair({0.0, 1.0}, {0.0, 1.0}, -1.0);
  double overshoot = -1.0;
  const double clamped =
      clark_corr_propagate(1.0, 0.9, 0.9, anti, 1.0, 1.0, &overshoot);
  CHECK(clamped == 1.0);
  CHECK(overshoot ==
        doctest::Approx(0.9 / anti.moments.std_dev - 1.0).epsilon(1e-12));
}

TEST_CASE("reduce of one stage is that stage") {
  const GaussianMoments only{4.0, 0.5};
  const GaussianMoments r = max_reduce({only}, CorrelationMatrix::identity(1));
  CHECK(r.mean == only.mean);
  CHECK(r.std_dev == only.std_dev);
}

TEST_CASE("reduce dominates the mean lower bound") {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> um(5.0, 50.0), us(0.5, 4.0), ur(0.0, 0.9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(gen() % 6);
    std::vector<GaussianMoments> stages;
    for (std::size_t i = 0; i < n; ++i) stages.push_back({um(gen), us(gen)});
    CorrelationMatrix corr = CorrelationMatrix::identity(n);
    const double rho = ur(gen);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) corr.set(i, j, rho);
    const GaussianMoments r = max_reduce(stages, corr);
    CHECK(r.mean >= statpipe::mean_lower_bound(stages) - 1e-12);
    CHECK(r.std_dev >= 0.0);
  }
}

TEST_CASE("reduce is permutation-invariant for distinct means") {
  const std::vector<GaussianMoments> stages = {
      {10.0, 1.0}, {12.5, 0.7}, {9.0, 2.0}, {11.0, 1.4}, {13.0, 0.4}};
  CorrelationMatrix corr = CorrelationMatrix::identity(5);
  corr.set(0, 1, 0.5);
  corr.set(0, 2, 0.2);
  corr.set(1, 3, 0.4);
  corr.set(2, 4, 0.1);
  corr.set(3, 4, 0.6);

  const GaussianMoments base = max_reduce(stages, corr);
  const std::vector<std::size_t> perm = {3, 0, 4, 2, 1};
  std::vector<GaussianMoments> shuffled;
  CorrelationMatrix pcorr = CorrelationMatrix::identity(5);
  for (std::size_t i = 0; i < 5; ++i) {
    shuffled.push_back(stages[perm[i]]);
    for (std::size_t j = i + 1; j < 5; ++j)
      pcorr.set(i, j, corr(perm[i], perm[j]));
  }
  const GaussianMoments got = max_reduce(shuffled, pcorr);
  // The fold order is canonical (sorted by mean), so the arithmetic is
  // identical, not merely close.
  CHECK(got.mean == base.mean);
  CHECK(got.std_dev == base.std_dev);
}

TEST_CASE("reduce of iid stages tracks a Monte-Carlo oracle") {
  // Five iid N(10, 1): the Gaussian fit underestimates sigma of the true max
  // by a few percent; pin the regression band around the library's value.
  const std::vector<GaussianMoments> stages(5, GaussianMoments{10.0, 1.0});
  const GaussianMoments fold = max_reduce(stages, CorrelationMatrix::identity(5));
  const std::vector<double> m = oracle::sample_iid_max(10.0, 1.0, 5, 2000000, 7);
  const oracle::Summary s = oracle::summarize(m);
  CHECK(std::fabs(fold.mean - s.mean) / s.mean < 0.002);
  const double sigma_err = std::fabs(fold.std_dev - s.sd) / s.sd;
  CHECK(sigma_err > 0.005);  // the bias is real...
  CHECK(sigma_err < 0.06);   // ...and bounded.
}

TEST_CASE("reduce reports clamped propagations") {
  std::vector<GaussianMoments> stages = {{0.0, 1.0}, {0.01, 1.0}, {5.0, 1.0}};
  CorrelationMatrix corr = CorrelationMatrix::identity(3);
  corr.set(0, 1, -0.95);
  corr.set(0, 2, 0.9);
  corr.set(1, 2, 0.9);
  ReduceDiagnostics diag;
  const GaussianMoments r = max_reduce(stages, corr, &diag);
  CHECK(r.mean >= 5.0 - 1e-9);
  CHECK(diag.clamp_events >= 1);
  CHECK(diag.worst_overshoot > 0.3);
}

TEST_CASE("reduce rejects malformed input") {
  CHECK_THROWS_AS(max_reduce({}, CorrelationMatrix::identity(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      max_reduce({{1.0, 0.1}, {2.0, 0.2}}, CorrelationMatrix::identity(3)),
      std::invalid_argument);
}
