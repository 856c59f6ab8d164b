#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "wsl/fields.hpp"
#include "wsl/quadrature.hpp"

using namespace wsl;

namespace {
const double kPi = 3.14159265358979323846;

RadialProfile gauss_profile(const Gaussian& g, int n = 2048) {
  return RadialProfile::sample([&](double r) { return g.eval(r); }, 1e-4, 12.0,
                               n);
}
}  // namespace

TEST_CASE("gaussian handle closed forms") {
  Gaussian g(1.0, 1.0);
  CHECK(g.eval(0.0) == Cplx(1.0, 0.0));
  CHECK(g.l2_norm() == doctest::Approx(std::pow(kPi / 2, 0.75)).epsilon(1e-12));

  // Product of handles sums widths.
  Gaussian p = g * Gaussian(Cplx(2.0, 1.0), 3.0);
  CHECK(p.width == Cplx(3.0, 1.0));
  CHECK(p.amplitude == Cplx(3.0, 0.0));

  CHECK_THROWS_AS(Gaussian(Cplx(-1.0, 0.0), 1.0), std::invalid_argument);

  // Weighted L^r norm against an independent adaptive quadrature.
  double r = 2.0, gamma = 0.3;
  double oracle = std::pow(
      4 * kPi * integrate_real(
                    [&](double rho) {
                      return std::pow(rho, 2 - r * gamma) *
                             std::exp(-2.0 * rho * rho);
                    },
                    1e-9, 14.0, 1e-12),
      1.0 / r);
  CHECK(g.weighted_lr_norm(r, gamma) == doctest::Approx(oracle).epsilon(1e-8));
  CHECK_THROWS_AS(g.weighted_lr_norm(2.0, 1.6), std::domain_error);

  // Plancherel and the gradient moment.
  CHECK(g.hs_norm(0.0) == doctest::Approx(g.l2_norm()).epsilon(1e-12));
  double grad_sq = 4 * 4 * kPi *
                   integrate_real(
                       [&](double rho) {
                         return std::pow(rho, 4) * std::exp(-2 * rho * rho);
                       },
                       0, 14.0, 1e-13);
  CHECK(g.hs_norm(1.0) == doctest::Approx(std::sqrt(grad_sq)).epsilon(1e-9));

  // Dilation covariance of the Sobolev norm: f(dx) scales by d^{sigma - 3/2}.
  for (double d : {0.25, 0.5, 2.0, 4.0}) {
    double lhs = g.dilated(d).hs_norm(0.7);
    double rhs = std::pow(d, 0.7 - 1.5) * g.hs_norm(0.7);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("radial weighted norm quadrature") {
  Gaussian g(1.0, 1.0);
  auto prof = gauss_profile(g);

  WeightSpec l2(frac(2, 1), frac(0, 1));
  auto n0 = weighted_lebesgue_norm(prof, l2);
  CHECK(n0.value == doctest::Approx(g.l2_norm()).epsilon(1e-7));
  CHECK(std::abs(n0.value - g.l2_norm()) <= 10 * n0.error + 1e-10);

  WeightSpec w(frac(2, 1), frac(3, 10));
  auto n1 = weighted_lebesgue_norm(prof, w);
  CHECK(n1.value ==
        doctest::Approx(g.weighted_lr_norm(2.0, 0.3)).epsilon(1e-7));

  // Zero data.
  auto zero_prof = RadialProfile::sample([](double) { return Cplx(0, 0); },
                                         1e-3, 10.0, 64);
  CHECK(weighted_lebesgue_norm(zero_prof, w).value == 0.0);

  // Divergent origin weight must be reported.
  WeightSpec bad(frac(2, 1), frac(8, 5));
  CHECK_THROWS_AS(weighted_lebesgue_norm(prof, bad), std::domain_error);
  CHECK_THROWS_AS(WeightSpec(frac(1, 2), frac(0, 1)), std::invalid_argument);

  // Dilation law: ||f(d.)|| = d^{-3/r + gamma} ||f||.
  for (double d : {0.25, 0.5, 2.0, 4.0}) {
    auto dil = gauss_profile(g.dilated(d));
    auto nd = weighted_lebesgue_norm(dil, w);
    CHECK(nd.value ==
          doctest::Approx(std::pow(d, -1.5 + 0.3) * n1.value).epsilon(1e-6));
  }

  // Refinement: the fine value should sit within the declared error of the
  // closed form.
  auto rough = gauss_profile(g, 256);
  auto nr = weighted_lebesgue_norm(rough, w);
  CHECK(std::abs(nr.value - g.weighted_lr_norm(2.0, 0.3)) <=
        10 * nr.error + 1e-9);
  CHECK(n1.error < nr.error);
}

TEST_CASE("radial norm properties") {
  Gaussian a(1.0, 1.0), b(Cplx(2.0, 0.5), Cplx(0.0, 1.0));
  auto pa = gauss_profile(a), pb = gauss_profile(b);
  WeightSpec w(frac(3, 1), frac(1, 5));
  RadialProfile sum = pa;
  for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += pb.values[i];
  double na = weighted_lebesgue_norm(pa, w).value;
  double nb = weighted_lebesgue_norm(pb, w).value;
  double ns = weighted_lebesgue_norm(sum, w).value;
  CHECK(ns <= na + nb + 1e-10);
  RadialProfile scaled = pa;
  for (auto& v : scaled.values) v *= Cplx(0, -2.5);
  CHECK(weighted_lebesgue_norm(scaled, w).value ==
        doctest::Approx(2.5 * na).epsilon(1e-10));
}

TEST_CASE("mixed norm composition") {
  WeightSpec w(frac(2, 1), frac(0, 1));
  // Single snapshot with q = infinity.
  CHECK(mixed_norm({0.0}, {3.5}, frac(0, 1)) == 3.5);
  // Constant in time over [0, 1]: equals the spatial norm for any q.
  std::vector<double> times, norms;
  for (int i = 0; i <= 20; ++i) {
    times.push_back(i / 20.0);
    norms.push_back(2.0);
  }
  CHECK(mixed_norm(times, norms, frac(1, 2)) == doctest::Approx(2.0));
  CHECK(mixed_norm(times, norms, frac(1, 3)) == doctest::Approx(2.0));
  CHECK(mixed_norm(times, norms, frac(0, 1)) == 2.0);
  CHECK_THROWS_AS(mixed_norm({}, {}, frac(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(mixed_norm({1.0, 0.5}, {1.0, 1.0}, frac(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("radial Sobolev norm vs closed form") {
  Gaussian g(1.0, 1.0);
  auto prof = gauss_profile(g, 1024);
  CHECK(hs_norm(prof, 0.0) == doctest::Approx(g.l2_norm()).epsilon(1e-3));
  CHECK(hs_norm(prof, 1.0) == doctest::Approx(g.hs_norm(1.0)).epsilon(1e-3));
  CHECK(hs_norm(prof, -0.5) == doctest::Approx(g.hs_norm(-0.5)).epsilon(1e-3));
  CHECK_THROWS_AS(hs_norm(prof, 1.6), std::invalid_argument);
}

TEST_CASE("3d grid norms") {
  Gaussian g(1.0, 1.0);
  auto f = Field3D::from_gaussian(20.0, 64, g);
  CHECK(f.l2_norm() == doctest::Approx(g.l2_norm()).epsilon(1e-8));

  WeightSpec w(frac(2, 1), frac(3, 10));
  auto n = weighted_lebesgue_norm(f, w);
  CHECK(n.value == doctest::Approx(g.weighted_lr_norm(2.0, 0.3)).epsilon(2e-3));

  CHECK(hs_norm(f, 0.0) == doctest::Approx(g.l2_norm()).epsilon(1e-8));
  CHECK(hs_norm(f, 1.0) == doctest::Approx(g.hs_norm(1.0)).epsilon(1e-6));

  CHECK_THROWS_AS(Field3D::zero(10.0, 48), std::invalid_argument);
}

TEST_CASE("field container round trip") {
  auto f = Field3D::from_gaussian(8.0, 16, Gaussian(Cplx(1.0, 0.3), 2.0));
  std::string path = "test_field_roundtrip.bin";
  save_field(f, path);
  auto g = load_field(path);
  std::remove(path.c_str());
  CHECK(g.n == f.n);
  CHECK(g.box_length == f.box_length);
  REQUIRE(g.samples.size() == f.samples.size());
  for (size_t i = 0; i < f.samples.size(); ++i)
    CHECK(g.samples[i] == f.samples[i]);
}

TEST_CASE("adaptive quadrature and fits") {
  // Oscillatory but resolvable.
  auto res = integrate([](double x) { return std::exp(Cplx(0, 40.0) * x); },
                       0.0, 1.0, 1e-10);
  Cplx oracle = (std::exp(Cplx(0, 40.0)) - 1.0) / Cplx(0, 40.0);
  CHECK(std::abs(res.value - oracle) < 1e-8);

  CHECK_THROWS_AS(integrate([](double x) { return Cplx(std::cos(1e7 * x), 0); },
                            0.0, 1.0, 1e-12, 8),
                  QuadratureError);

  auto fit = fit_loglog({1, 2, 4, 8}, {3, 1.5, 0.75, 0.375});
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
}
