#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "wsl/fft.hpp"
#include "wsl/propagator.hpp"
#include "wsl/quadrature.hpp"

using namespace wsl;

namespace {
double rel_l2_diff(const Field3D& a, const Field3D& b) {
  double num = 0, den = 0;
  for (size_t i = 0; i < a.samples.size(); ++i) {
    num += std::norm(a.samples[i] - b.samples[i]);
    den += std::norm(b.samples[i]);
  }
  return std::sqrt(num / den);
}
}  // namespace

TEST_CASE("gaussian free evolution") {
  Gaussian g(Cplx(1.0, 0.2), Cplx(0.5, -0.25));
  auto id = propagate_gaussian(g, 0.0);
  CHECK(id.width == g.width);
  CHECK(id.amplitude == g.amplitude);

  // Unitarity in L^2 for all times.
  for (double t : {0.1, 1.0, 10.0, -3.0, 250.0})
    CHECK(propagate_gaussian(g, t).l2_norm() ==
          doctest::Approx(g.l2_norm()).epsilon(1e-12));

  // Dispersive sup-norm decay t^{-3/2}.
  Gaussian u(1.0, 1.0);
  std::vector<double> ts, sups;
  for (double t = 10; t <= 1e4; t *= 2) {
    ts.push_back(t);
    sups.push_back(propagate_gaussian(u, t).sup_norm());
  }
  auto fit = fit_loglog(ts, sups);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(0.01 / 1.5));
}

TEST_CASE("spectral propagation") {
  Gaussian g(1.0, 1.0);
  auto f = Field3D::from_gaussian(40.0, 128, g);
  auto evolved = propagate_spectral(f, 1.0);
  // FFT roundoff at 128^3 sits a few ulps above 1e-13.
  CHECK(evolved.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(2e-12));

  // Against the closed form sampled on the grid.
  auto oracle = Field3D::from_gaussian(40.0, 128, propagate_gaussian(g, 1.0));
  CHECK(rel_l2_diff(evolved, oracle) < 1e-6);

  // Semigroup property.
  auto two_steps = propagate_spectral(propagate_spectral(f, 0.35), 0.65);
  auto one_step = propagate_spectral(f, 1.0);
  CHECK(rel_l2_diff(two_steps, one_step) < 1e-13);
}

TEST_CASE("kernel quadrature route") {
  Gaussian g(2.0, 1.0);
  auto src = Field3D::from_gaussian(8.0, 64, g);
  std::vector<std::array<double, 3>> targets;
  for (int i = 0; i < 10; ++i) {
    double a = 0.17 * i - 0.8, b = 0.11 * i - 0.5, c = 0.07 * i - 0.3;
    targets.push_back({a, b, c});
  }
  double t = 2.0;
  auto vals = propagate_kernel(src, t, targets);
  Gaussian moved = propagate_gaussian(g, t);
  for (size_t i = 0; i < targets.size(); ++i) {
    double rho = std::sqrt(targets[i][0] * targets[i][0] +
                           targets[i][1] * targets[i][1] +
                           targets[i][2] * targets[i][2]);
    CHECK(std::abs(vals[i] - moved.eval(rho)) < 1e-6);
  }

  // Linearity in the source.
  auto doubled = src;
  for (auto& v : doubled.samples) v *= Cplx(2.0, 1.0);
  auto vals2 = propagate_kernel(doubled, t, {targets[0]});
  CHECK(std::abs(vals2[0] - Cplx(2.0, 1.0) * vals[0]) < 1e-12);

  // Conjugation symmetry.
  auto conj_src = src;
  for (auto& v : conj_src.samples) v = std::conj(v);
  auto back = propagate_kernel(conj_src, -t, {targets[3]});
  CHECK(std::abs(back[0] - std::conj(vals[3])) < 1e-12);

  CHECK_THROWS_AS(propagate_kernel(src, 0.0, targets), std::domain_error);
  // Unresolved oscillation must fail loudly.
  CHECK_THROWS_AS(propagate_kernel(src, 1e-3, {{30.0, 0.0, 0.0}}),
                  QuadratureError);
}

TEST_CASE("duhamel integral") {
  const double L = 8.0;
  const int n = 8;
  auto zero = duhamel([&](double) { return Field3D::zero(L, n); }, 1.0, 16);
  CHECK(zero.l2_norm() == 0.0);

  // Time-independent forcing against the per-mode closed form
  // (e^{-i t |k|^2} - 1)/(-i |k|^2) F^hat.
  Gaussian g(0.5, 1.0);
  auto F = Field3D::from_gaussian(L, n, g);
  double t = 0.25;
  auto numeric = duhamel([&](double) { return F; }, t, 512);

  auto hat = F.samples;
  fft3(hat, n, -1);
  double dk = 2 * M_PI / L;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        int wx = ix < n / 2 ? ix : ix - n;
        int wy = iy < n / 2 ? iy : iy - n;
        int wz = iz < n / 2 ? iz : iz - n;
        double k2 = dk * dk * (wx * wx + wy * wy + wz * wz);
        Cplx factor = k2 == 0 ? Cplx(t, 0)
                              : (std::exp(Cplx(0, -t * k2)) - 1.0) /
                                    Cplx(0, -k2);
        hat[(static_cast<size_t>(ix) * n + iy) * n + iz] *= factor;
      }
  fft3(hat, n, +1);
  Field3D oracle = Field3D::zero(L, n);
  oracle.samples = hat;
  for (auto& v : oracle.samples) v *= 1.0 / (n * n * n);
  CHECK(rel_l2_diff(numeric, oracle) < 1e-6);

  // Second-order convergence on smooth time-dependent forcing.
  auto forcing = [&](double s) {
    Field3D out = F;
    for (auto& v : out.samples) v *= std::exp(Cplx(-s, 0.3 * s));
    return out;
  };
  auto reference = duhamel(forcing, t, 1024);
  double e32 = rel_l2_diff(duhamel(forcing, t, 32), reference);
  double e64 = rel_l2_diff(duhamel(forcing, t, 64), reference);
  CHECK(e32 / e64 > 3.0);
  CHECK(e32 / e64 < 5.0);

  CHECK_THROWS_AS(duhamel([&](double) { return F; }, 1.0, 0),
                  std::invalid_argument);
}
