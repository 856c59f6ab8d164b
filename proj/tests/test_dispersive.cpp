#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wsl/dispersive.hpp"

using namespace wsl;

namespace {
std::vector<double> dyadic_times(double lo, double hi) {
  std::vector<double> ts;
  for (double t = lo; t <= hi; t *= 2) ts.push_back(t);
  return ts;
}
}  // namespace

TEST_CASE("weighted decay slope fits") {
  Gaussian g(1.0, 1.0);
  auto times = dyadic_times(10.0, 1.5e3);

  struct Example {
    Rat inv_q, inv_p_prime, gamma, gamma_t;
    double slope;
  };
  // Classical unweighted case, the symmetric L^2 case, and a mixed case.
  std::vector<Example> examples = {
      {frac(1, 6), frac(5, 6), frac(0, 1), frac(0, 1), -1.0},
      {frac(1, 2), frac(1, 2), frac(3, 10), frac(3, 10), -0.3},
      {frac(1, 3), frac(2, 3), frac(3, 10), frac(3, 10), -0.8},
  };
  for (const auto& ex : examples) {
    auto res =
        decay_rate_fit(g, ex.inv_q, ex.inv_p_prime, ex.gamma, ex.gamma_t, times);
    CHECK(res.predicted_slope == doctest::Approx(ex.slope).epsilon(1e-12));
    CHECK(std::abs(res.fitted_slope - res.predicted_slope) < 0.02);
    CHECK(res.residual < 1e-3);
  }

  // Hypothesis violations are rejected exactly.
  CHECK_THROWS_AS(decay_rate_fit(g, frac(1, 6), frac(5, 6), frac(0, 1),
                                 frac(1, 10), times),
                  std::invalid_argument);  // scaling relation broken
  CHECK_THROWS_AS(decay_rate_fit(g, frac(1, 2), frac(1, 3), frac(0, 1),
                                 frac(1, 2), times),
                  std::invalid_argument);  // p' > q
  CHECK_THROWS_AS(decay_rate_fit(g, frac(1, 6), frac(5, 6), frac(3, 5),
                                 frac(3, 5), times),
                  std::invalid_argument);  // gamma >= 3/q
  CHECK_THROWS_AS(decay_rate_fit(g, frac(1, 6), frac(5, 6), frac(0, 1),
                                 frac(0, 1), {10.0, 20.0}),
                  std::invalid_argument);  // too few samples
}

TEST_CASE("weighted fourier ratio dilation invariance") {
  Gaussian g(Cplx(1.0, 0.0), Cplx(1.0, 0.5));
  std::vector<double> deltas = {0.1, 0.5, 1.0, 2.0, 10.0};

  // Plancherel: the unweighted L^2 ratio is exactly 1.
  auto plancherel =
      pitt_ratio_scan(g, deltas, frac(1, 2), frac(1, 2), frac(0, 1), frac(0, 1));
  for (double r : plancherel.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));

  // Weighted symmetric case: finite, positive, dilation-invariant.
  auto scan = pitt_ratio_scan(g, deltas, frac(1, 2), frac(1, 2), frac(3, 10),
                              frac(3, 10));
  CHECK(scan.max_ratio > 0);
  CHECK(scan.max_relative_spread < 1e-11);

  // Off-diagonal exponents satisfying the scaling relation.
  auto scan2 = pitt_ratio_scan(g, deltas, frac(1, 3), frac(2, 3), frac(1, 5),
                               frac(1, 5));
  CHECK(scan2.max_relative_spread < 1e-11);

  CHECK_THROWS_AS(pitt_ratio_scan(g, deltas, frac(1, 3), frac(2, 3),
                                  frac(1, 5), frac(2, 5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(pitt_ratio_scan(g, deltas, frac(1, 2), frac(1, 2),
                                  frac(-1, 10), frac(-1, 10)),
                  std::invalid_argument);
}

TEST_CASE("homogeneous estimate ratio") {
  Gaussian g(1.0, 1.0);
  Rat inv_q = frac(3, 10), inv_r = frac(2, 5), gamma = frac(3, 10),
      sigma = frac(0, 1);

  auto scan = homogeneous_strichartz_ratio(g, inv_q, inv_r, gamma, sigma,
                                           200.0, 40);
  REQUIRE(scan.ratios.size() >= 4);
  // Cumulative windows grow monotonically and stabilize.
  for (size_t i = 1; i < scan.ratios.size(); ++i)
    CHECK(scan.ratios[i] >= scan.ratios[i - 1]);
  size_t m = scan.ratios.size();
  CHECK(std::abs(scan.ratios[m - 1] / scan.ratios[m - 2] - 1.0) < 0.01);
  CHECK(scan.final_ratio > 0);

  // Dilation invariance: f_delta over the delta^{-2}-scaled window gives the
  // same ratio under the admissibility scaling relation.
  for (double d : {0.5, 2.0}) {
    auto dil = homogeneous_strichartz_ratio(g.dilated(d), inv_q, inv_r, gamma,
                                            sigma, 200.0 / (d * d), 40);
    CHECK(dil.final_ratio ==
          doctest::Approx(scan.final_ratio).epsilon(1e-9));
  }

  // Non-admissible pairs are rejected.
  CHECK_THROWS_AS(homogeneous_strichartz_ratio(g, frac(1, 2), frac(2, 5),
                                               gamma, sigma, 10.0, 8),
                  std::invalid_argument);
}

TEST_CASE("inhomogeneous estimate ratio") {
  ExponentConfig cfg;
  cfg.inv_q = frac(81, 400);
  cfg.inv_r = frac(269, 600);
  cfg.inv_qt = frac(119, 200);
  cfg.inv_rt = frac(27, 100);
  cfg.gamma = frac(1, 4);
  cfg.gamma_t = frac(1, 2);
  REQUIRE(inhomogeneous_admissible(cfg).membership.is_member());

  InhomRatioParams params;
  auto base = inhomogeneous_strichartz_ratio(cfg, params);
  REQUIRE(base.ratios.size() >= 4);
  CHECK(base.final_ratio > 0);
  CHECK(std::isfinite(base.final_ratio));
  for (size_t i = 1; i < base.ratios.size(); ++i)
    CHECK(base.ratios[i] >= base.ratios[i - 1]);

  // The forcing family rescales exactly on the grid, so the ratio is
  // invariant under the sharp-scaling relation up to rounding.
  auto scaled = inhomogeneous_strichartz_ratio(cfg, params, 2.0);
  CHECK(scaled.final_ratio ==
        doctest::Approx(base.final_ratio).epsilon(1e-9));

  ExponentConfig bad = cfg;
  bad.gamma_t = frac(3, 5);  // breaks the sharp scaling relation
  CHECK_THROWS_AS(inhomogeneous_strichartz_ratio(bad, params),
                  std::invalid_argument);

  InhomRatioParams badp;
  badp.duhamel_steps = 30;  // not a multiple of time_samples
  CHECK_THROWS_AS(inhomogeneous_strichartz_ratio(cfg, badp),
                  std::invalid_argument);
}
