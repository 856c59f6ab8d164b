#include "wsl/necessity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wsl/quadrature.hpp"

namespace wsl {

namespace {
constexpr double kPi = std::numbers::pi;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlNode[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGlWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

// Root of dphase on (a, b): bracket on a coarse grid, then bisect.
double critical_point(const StationaryPhaseProblem& p) {
  const int grid = 64;
  double lo = 0, hi = 0, flo = 0;
  bool found = false;
  double prev_s = p.a, prev_f = p.dphase(p.a);
  for (int i = 1; i <= grid; ++i) {
    double s = p.a + (p.b - p.a) * i / grid;
    double f = p.dphase(s);
    if (prev_f == 0) return prev_s;
    if (prev_f * f < 0) {
      lo = prev_s;
      hi = s;
      flo = prev_f;
      found = true;
      break;
    }
    prev_s = s;
    prev_f = f;
  }
  if (!found)
    throw std::domain_error("stationary phase: no interior critical point");
  for (int it = 0; it < 200 && hi - lo > 1e-16 * (p.b - p.a); ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = p.dphase(mid);
    if (fm == 0) return mid;
    if (flo * fm < 0)
      hi = mid;
    else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

Cplx leading_term(const StationaryPhaseProblem& p, double N, double s_star) {
  double q2 = p.d2phase(s_star);
  if (q2 == 0)
    throw std::domain_error("stationary phase: degenerate critical point");
  double sgn = q2 > 0 ? 1.0 : -1.0;
  return p.amplitude(s_star) * std::sqrt(2 * kPi / (N * std::abs(q2))) *
         std::exp(Cplx(0, N * p.phase(s_star) + sgn * kPi / 4));
}

// Inner chirp integral int_0^1 e^{i R^2 q(s)} (t-s)^{-3/2} ds.
Cplx chirp_inner(double R, double t, double z) {
  auto p = chirp_problem(t, z);
  double N = R * R;
  if (R >= 64.0) return leading_term(p, N, critical_point(p));
  auto res = integrate(
      [&](double s) {
        return std::exp(Cplx(0, N * p.phase(s))) * p.amplitude(s);
      },
      p.a, p.b, 1e-10, 28);
  return res.value;
}

// 4 pi int_{lo}^{hi} rho^{2 - r*gamma} d rho, the exact radial weight mass.
double annulus_weight_integral(double lo, double hi, double r, double gamma) {
  double e = 3.0 - r * gamma;
  if (e <= 0)
    throw std::domain_error("weight integral diverges: 3 - r*gamma <= 0");
  return 4 * kPi * (std::pow(hi, e) - std::pow(lo, e)) / e;
}
}  // namespace

double annulus_bump(double rho) {
  double u = 2 * rho - 3;
  if (u <= -1 || u >= 1) return 0;
  return std::exp(-1.0 / (1.0 - u * u));
}

Cplx ttstar_annulus(double t, double x_mag) {
  if (t <= 0)
    throw std::domain_error("annulus response: needs t > 0");
  if (x_mag <= 0)
    throw std::domain_error("annulus response: needs |x| > 0");
  // The forcing acts on s in (0, 1); before t = 1 only the elapsed part of
  // the window contributes, so the response stays bounded as t -> 0+.
  double tau = std::min(t, 1.0);
  auto f = [&](double rho) {
    Cplx w = (std::exp(Cplx(0, -tau * rho * rho)) - 1.0) / Cplx(0, -rho * rho);
    return std::sin(rho * x_mag) * rho * std::exp(Cplx(0, t * rho * rho)) * w *
           annulus_bump(rho);
  };
  auto res = integrate(f, 1.0, 2.0, 1e-12, 32);
  return std::pow(2 * kPi, -1.5) * (4 * kPi / x_mag) * res.value;
}

GrowthScan necessity_n2_scan(const Rat& inv_q, const Rat& inv_r,
                             const Rat& gamma,
                             const std::vector<double>& N_list) {
  if (N_list.size() < 3)
    throw std::invalid_argument("necessity scan: need >= 3 parameter values");
  double r = 1.0 / to_double(inv_r);
  double g = to_double(gamma);
  if (3.0 - r * g <= 0)
    throw std::domain_error("necessity scan: annulus weight diverges");

  GrowthScan scan;
  scan.params = N_list;
  for (double N : N_list) {
    std::vector<double> ts, norms;
    for (int j = 0; j <= 4; ++j) {
      double t = N * (1.0 + 0.25 * j);
      double amp = std::abs(ttstar_annulus(t, 3 * t));
      double w = std::pow(annulus_weight_integral(2.5 * t, 3.5 * t, r, g),
                          1.0 / r);
      ts.push_back(t);
      norms.push_back(amp * w);
    }
    scan.values.push_back(mixed_norm(ts, norms, inv_q));
  }
  scan.fitted_exponent = fit_loglog(scan.params, scan.values).slope;
  scan.predicted_exponent =
      to_double(frac(-3, 2) + 3 * inv_r - gamma + inv_q);
  scan.necessity_demonstrated = scan.fitted_exponent >= 0;
  return scan;
}

StationaryPhaseResult stationary_phase_eval(const StationaryPhaseProblem& p,
                                            double N) {
  StationaryPhaseResult out;
  out.s_star = critical_point(p);
  out.leading = leading_term(p, N, out.s_star);
  out.direct = integrate(
                   [&](double s) {
                     return std::exp(Cplx(0, N * p.phase(s))) *
                            p.amplitude(s);
                   },
                   p.a, p.b, 1e-10, 28)
                   .value;
  out.remainder = std::abs(out.direct - out.leading);
  return out;
}

StationaryPhaseProblem chirp_problem(double t, double z_mag) {
  if (t <= 1)
    throw std::domain_error("chirp phase: needs t > 1");
  double z2 = z_mag * z_mag;
  StationaryPhaseProblem p;
  p.a = 0;
  p.b = 1;
  p.phase = [t, z2](double s) { return 2 * s * s - z2 / (t - s); };
  p.dphase = [t, z2](double s) {
    return 4 * s - z2 / ((t - s) * (t - s));
  };
  p.d2phase = [t, z2](double s) {
    return 4 - 2 * z2 / ((t - s) * (t - s) * (t - s));
  };
  p.amplitude = [t](double s) { return std::pow(t - s, -1.5); };
  return p;
}

Cplx ttstar_chirped(double R, double t, const std::array<double, 3>& x) {
  if (t < 4 || t > 5)
    throw std::domain_error("chirped response: needs t in [4, 5]");
  double xm = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  double y_rad = 1 / (2 * R);
  if (xm <= 2 * R + y_rad || xm >= 4 * R - y_rad)
    throw std::domain_error("chirped response: |x| outside the window");

  // Spherical coordinates about the x direction for the ball integral.
  Cplx acc = 0;
  for (int i = 0; i < 8; ++i) {
    double rho = 0.5 * y_rad * (1 + kGlNode[i]);
    double w_rho = 0.5 * y_rad * kGlWeight[i];
    for (int j = 0; j < 8; ++j) {
      double u = kGlNode[j];
      double dist = std::sqrt(xm * xm - 2 * xm * rho * u + rho * rho);
      double z = dist / (2 * R);
      acc += w_rho * kGlWeight[j] * 2 * kPi * rho * rho *
             chirp_inner(R, t, z);
    }
  }
  return std::pow(Cplx(0, -4 * kPi), -1.5) * acc;
}

double chirp_phase_bound(double R) {
  double y_rad = 1 / (2 * R);
  double worst = 0;
  for (int i = 0; i <= 16; ++i) {
    double t = 4.0 + i / 16.0;
    for (int j = 0; j <= 32; ++j) {
      double xm = (2 * R + y_rad) +
                  (2 * R - 2 * y_rad) * j / 32.0;
      auto p = chirp_problem(t, xm / (2 * R));
      double s_star = critical_point(p);
      double numer = y_rad * y_rad + 2 * xm * y_rad;
      worst = std::max(worst, numer / (4 * (t - s_star)));
    }
  }
  return worst;
}

double chirped_forcing_norm(double R, const Rat& inv_rt, const Rat& gamma_t) {
  double e = -3 * (1 - to_double(inv_rt)) - to_double(gamma_t);
  return std::pow(2 * R, e);
}

GrowthScan necessity_n5_scan(const ExponentConfig& cfg,
                             const std::vector<double>& R_list) {
  if (R_list.size() < 3)
    throw std::invalid_argument("necessity scan: need >= 3 parameter values");
  double r = 1.0 / to_double(cfg.inv_r);
  double g = to_double(cfg.gamma);
  if (3.0 - r * g <= 0)
    throw std::domain_error("necessity scan: weight integral diverges");

  GrowthScan scan;
  scan.params = R_list;
  for (double R : R_list) {
    double y_rad = 1 / (2 * R);
    std::vector<double> ts, norms;
    for (int j = 0; j <= 2; ++j) {
      double t = 4.0 + 0.5 * j;
      double amp = std::abs(ttstar_chirped(R, t, {3 * R, 0, 0}));
      double w = std::pow(
          annulus_weight_integral(2 * R + y_rad, 4 * R - y_rad, r, g),
          1.0 / r);
      ts.push_back(t);
      norms.push_back(amp * w);
    }
    double lhs = mixed_norm(ts, norms, cfg.inv_q);
    scan.values.push_back(lhs / chirped_forcing_norm(R, cfg.inv_rt,
                                                     cfg.gamma_t));
  }
  scan.fitted_exponent = fit_loglog(scan.params, scan.values).slope;
  scan.predicted_exponent =
      to_double(3 * ((cfg.inv_r - cfg.gamma / 3) -
                     (cfg.inv_rt - cfg.gamma_t / 3) - frac(1, 3)));
  scan.necessity_demonstrated = scan.fitted_exponent >= 0;
  return scan;
}

}  // namespace wsl
