#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wsl/necessity.hpp"
#include "wsl/quadrature.hpp"

using namespace wsl;

TEST_CASE("frequency annulus bump") {
  CHECK(annulus_bump(0.9) == 0.0);
  CHECK(annulus_bump(1.0) == 0.0);
  CHECK(annulus_bump(2.0) == 0.0);
  CHECK(annulus_bump(2.5) == 0.0);
  CHECK(annulus_bump(1.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(annulus_bump(1.2) > 0.0);
  CHECK(annulus_bump(1.2) == annulus_bump(1.8));  // symmetric about 3/2
}

TEST_CASE("annulus response plateau") {
  // Along |x| = 3t the radial oscillatory integral keeps an interior
  // stationary frequency, so the amplitude decays like t^{-3/2}.
  std::vector<double> ts, amps;
  for (double t = 8; t <= 512; t *= 2) {
    ts.push_back(t);
    amps.push_back(std::abs(ttstar_annulus(t, 3 * t)));
  }
  auto fit = fit_loglog(ts, amps);
  CHECK(std::abs(fit.slope + 1.5) < 0.05);

  // Far outside the stationary cone the response is much weaker.
  CHECK(std::abs(ttstar_annulus(64.0, 640.0)) <
        0.05 * std::abs(ttstar_annulus(64.0, 192.0)));

  // Bounded short-time limit: the forcing window is only partially elapsed.
  CHECK(std::abs(ttstar_annulus(0.5, 10.0)) < 1.0);
  CHECK(std::abs(ttstar_annulus(1e-4, 1.0)) < 1e-3);
  CHECK_THROWS_AS(ttstar_annulus(0.0, 10.0), std::domain_error);
  CHECK_THROWS_AS(ttstar_annulus(1.0, 0.0), std::domain_error);
}

TEST_CASE("time-decay necessity scan") {
  std::vector<double> Ns = {8, 16, 32, 64, 128, 256};

  // Violating exponents: the truncated ratio grows.
  auto bad = necessity_n2_scan(frac(1, 2), frac(1, 2), frac(0, 1), Ns);
  CHECK(bad.predicted_exponent == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(bad.fitted_exponent - bad.predicted_exponent) < 0.05);
  CHECK(bad.necessity_demonstrated);

  // Admissible exponents: bounded (negative growth exponent).
  auto good = necessity_n2_scan(frac(3, 10), frac(2, 5), frac(3, 10), Ns);
  CHECK(good.predicted_exponent == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(std::abs(good.fitted_exponent - good.predicted_exponent) < 0.05);
  CHECK_FALSE(good.necessity_demonstrated);

  CHECK_THROWS_AS(
      necessity_n2_scan(frac(1, 2), frac(1, 2), frac(3, 2), Ns),
      std::domain_error);
  CHECK_THROWS_AS(necessity_n2_scan(frac(1, 2), frac(1, 2), frac(0, 1),
                                    {8.0, 16.0}),
                  std::invalid_argument);
}

TEST_CASE("stationary phase evaluation") {
  // Reference critical point of the chirp phase at t = 4, |z| = 1.
  auto p0 = chirp_problem(4.0, 1.0);
  auto r0 = stationary_phase_eval(p0, 1024.0);
  CHECK(r0.s_star == doctest::Approx(0.0157485).epsilon(1e-4));

  auto p = chirp_problem(4.5, 1.5);
  auto res = stationary_phase_eval(p, 4096.0);
  // The critical point solves s = z^2 / (4 (t - s)^2).
  CHECK(std::abs(p.dphase(res.s_star)) < 1e-10);
  CHECK(res.s_star > 0.01);
  CHECK(res.s_star < 1.0 / 9.0 + 1e-12);
  double rel1 = res.remainder / std::abs(res.leading);
  CHECK(rel1 < 0.2);

  // Endpoint contributions are lower order: the relative mismatch shrinks
  // like N^{-1/2}.
  auto res2 = stationary_phase_eval(p, 65536.0);
  double rel2 = res2.remainder / std::abs(res2.leading);
  CHECK(rel2 < 0.03);
  CHECK(rel1 / rel2 > 2.5);

  // Monotone phase: no interior critical point.
  StationaryPhaseProblem mono;
  mono.phase = [](double s) { return s; };
  mono.dphase = [](double) { return 1.0; };
  mono.d2phase = [](double) { return 0.0; };
  mono.amplitude = [](double) { return 1.0; };
  CHECK_THROWS_AS(stationary_phase_eval(mono, 100.0), std::domain_error);
}

TEST_CASE("chirped ball response") {
  // The quadratic y-phase correction stays below 19/64 across the window.
  for (double R : {8.0, 64.0, 512.0})
    CHECK(chirp_phase_bound(R) <= 19.0 / 64.0);

  // Direct quadrature (below R = 64) and the stationary-phase route agree in
  // magnitude across the switch; endpoint terms are ~N^{-1/2} relative here.
  double a1 = std::abs(ttstar_chirped(63.9, 4.5, {3 * 63.9, 0, 0}));
  double a2 = std::abs(ttstar_chirped(64.1, 4.5, {3 * 64.1, 0, 0}));
  CHECK(std::abs(a1 / a2 - 1.0) < 0.15);

  CHECK_THROWS_AS(ttstar_chirped(64.0, 3.0, {192, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(ttstar_chirped(64.0, 4.5, {100, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(ttstar_chirped(64.0, 4.5, {300, 0, 0}), std::domain_error);
}

TEST_CASE("scaling necessity scan") {
  std::vector<double> Rs = {64, 128, 256, 512, 1024};

  // Configuration violating only the scaling gap condition: ratio grows.
  ExponentConfig bad;
  bad.inv_q = frac(1, 4);
  bad.inv_r = frac(149, 300);
  bad.inv_qt = frac(23, 40);
  bad.inv_rt = frac(23, 150);
  bad.gamma = frac(3, 10);
  bad.gamma_t = frac(3, 10);
  auto grow = necessity_n5_scan(bad, Rs);
  CHECK(grow.predicted_exponent == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(std::abs(grow.fitted_exponent - grow.predicted_exponent) < 0.005);
  CHECK(grow.necessity_demonstrated);

  // Admissible configuration: ratio decays.
  ExponentConfig good;
  good.inv_q = frac(81, 400);
  good.inv_r = frac(269, 600);
  good.inv_qt = frac(119, 200);
  good.inv_rt = frac(27, 100);
  good.gamma = frac(1, 4);
  good.gamma_t = frac(1, 2);
  auto bounded = necessity_n5_scan(good, Rs);
  CHECK(bounded.predicted_exponent ==
        doctest::Approx(-43.0 / 200.0).epsilon(1e-12));
  CHECK(std::abs(bounded.fitted_exponent - bounded.predicted_exponent) <
        0.005);
  CHECK_FALSE(bounded.necessity_demonstrated);

  ExponentConfig diverging = good;
  diverging.gamma = frac(3, 2);
  CHECK_THROWS_AS(necessity_n5_scan(diverging, Rs), std::domain_error);
}
