#include "wsl/dispersive.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wsl/fft.hpp"
#include "wsl/propagator.hpp"

namespace wsl {

namespace {
constexpr double kPi = std::numbers::pi;

// Smooth bump on (0, 1), vanishing to all orders at the endpoints.
double time_bump(double s) {
  if (s <= 0 || s >= 1) return 0;
  return std::exp(-1.0 / (s * (1.0 - s)));
}
}  // namespace

DecayExperiment decay_rate_fit(const Gaussian& family, const Rat& inv_q,
                               const Rat& inv_p_prime, const Rat& gamma,
                               const Rat& gamma_t,
                               const std::vector<double>& times) {
  // 1 < p' <= q < infinity.
  if (!(inv_q > 0 && inv_p_prime < 1 && inv_p_prime >= inv_q && inv_q <= 1))
    throw std::invalid_argument("decay fit: need 1 < p' <= q < infinity");
  if (!(gamma < 3 * inv_q))
    throw std::invalid_argument("decay fit: need gamma < 3/q");
  Rat inv_p = 1 - inv_p_prime;
  if (gamma_t - gamma != 3 * (inv_p - inv_q))
    throw std::invalid_argument(
        "decay fit: need gamma_t - gamma = 3(1/p - 1/q)");
  if (times.size() < 6)
    throw std::invalid_argument("decay fit: need >= 6 time samples");

  DecayExperiment ex;
  ex.times = times;
  double q = 1.0 / to_double(inv_q);
  for (double t : times)
    ex.norms.push_back(
        propagate_gaussian(family, t).weighted_lr_norm(q, to_double(gamma)));
  auto fit = fit_loglog(ex.times, ex.norms);
  ex.fitted_slope = fit.slope;
  ex.residual = fit.residual;
  ex.predicted_slope =
      to_double(frac(3, 2) * (inv_q - inv_p_prime) - (gamma + gamma_t) / 2);
  return ex;
}

PittScan pitt_ratio_scan(const Gaussian& f, const std::vector<double>& deltas,
                         const Rat& inv_q, const Rat& inv_p_prime,
                         const Rat& gamma, const Rat& gamma_t) {
  if (!(inv_q > 0 && inv_p_prime < 1 && inv_p_prime >= inv_q))
    throw std::invalid_argument("pitt scan: need 1 < p' <= q < infinity");
  Rat inv_p = 1 - inv_p_prime;
  if (gamma_t - gamma != 3 * (inv_p - inv_q))
    throw std::invalid_argument("pitt scan: scaling relation violated");
  if (!(gamma >= 0 && gamma < 3 * inv_q))
    throw std::invalid_argument("pitt scan: need 0 <= gamma < 3/q");
  if (!(gamma_t >= 0 && gamma_t < 3 * inv_p))
    throw std::invalid_argument("pitt scan: need 0 <= gamma_t < 3/p");

  double q = 1.0 / to_double(inv_q);
  double pp = 1.0 / to_double(inv_p_prime);
  PittScan scan;
  scan.deltas = deltas;
  auto ratio_at = [&](double d) {
    Gaussian fd = f.dilated(d);
    // Transform of A e^{-w|x|^2}: A (2w)^{-3/2} e^{-|xi|^2/(4w)}.
    Gaussian fhat(0.25 / fd.width, fd.amplitude * std::pow(2.0 * fd.width, -1.5));
    double lhs = fhat.weighted_lr_norm(q, to_double(gamma));
    double rhs = fd.weighted_lr_norm(pp, -to_double(gamma_t));
    return lhs / rhs;
  };
  double base = ratio_at(1.0);
  for (double d : deltas) {
    double r = ratio_at(d);
    scan.ratios.push_back(r);
    scan.max_ratio = std::max(scan.max_ratio, r);
    scan.max_relative_spread =
        std::max(scan.max_relative_spread, std::abs(r / base - 1.0));
  }
  return scan;
}

RatioScan homogeneous_strichartz_ratio(const Gaussian& f, const Rat& inv_q,
                                       const Rat& inv_r, const Rat& gamma,
                                       const Rat& sigma, double t_max,
                                       int time_samples) {
  auto ad = ad_membership(inv_q, inv_r, gamma, sigma);
  if (!ad.full.is_member())
    throw std::invalid_argument("homogeneous ratio: pair not admissible");
  RatioScan scan;
  if (t_max <= 0) {
    scan.window_ends = {0.0};
    scan.ratios = {0.0};
    return scan;
  }
  if (time_samples < 4)
    throw std::invalid_argument("homogeneous ratio: too few time samples");
  double r = 1.0 / to_double(inv_r);
  double g = to_double(gamma);
  double denom = f.hs_norm(to_double(sigma));
  std::vector<double> times, norms;
  for (int j = 0; j <= time_samples; ++j) {
    // Quadratic clustering toward t = 0 where the integrand peaks.
    double t = t_max * std::pow(double(j) / time_samples, 2.0);
    times.push_back(t);
    norms.push_back(propagate_gaussian(f, t).weighted_lr_norm(r, g));
  }
  for (int j = 2; j <= time_samples; j += 2) {
    std::vector<double> tw(times.begin(), times.begin() + j + 1);
    std::vector<double> nw(norms.begin(), norms.begin() + j + 1);
    scan.window_ends.push_back(times[j]);
    scan.ratios.push_back(mixed_norm(tw, nw, inv_q) / denom);
  }
  scan.final_ratio = scan.ratios.back();
  return scan;
}

RatioScan inhomogeneous_strichartz_ratio(const ExponentConfig& cfg,
                                         const InhomRatioParams& params,
                                         double delta) {
  auto adm = inhomogeneous_admissible(cfg);
  if (!adm.membership.is_member())
    throw std::invalid_argument("inhomogeneous ratio: config not admissible");
  if (params.time_samples < 2 ||
      params.duhamel_steps % params.time_samples != 0)
    throw std::invalid_argument(
        "inhomogeneous ratio: duhamel_steps must be a positive multiple of "
        "time_samples");

  const double d2 = delta * delta;
  const double L = params.box_length / delta;
  const int n = params.n;
  const double t_max = params.t_max / d2;
  Gaussian g(1.0, 1.0);
  auto forcing_field = [&](double s) {
    double amp = time_bump(d2 * s);
    return Field3D::from_function(L, n, [&](double x, double y, double z) {
      double rho2 = (x * x + y * y + z * z) * d2;
      return amp * std::exp(-rho2) * g.amplitude;
    });
  };

  WeightSpec lhs_weight(1 / cfg.inv_r, cfg.gamma);
  // Dual exponents of the forcing norm.
  Rat inv_rt_dual = 1 - cfg.inv_rt;
  Rat inv_qt_dual = 1 - cfg.inv_qt;
  WeightSpec dual_weight(1 / inv_rt_dual, -cfg.gamma_t);

  // March the Duhamel accumulator once, harvesting snapshots.
  int S = params.duhamel_steps;
  double ds = t_max / S;
  int stride = S / params.time_samples;
  std::vector<double> times{0.0}, lhs_norms{0.0};
  std::vector<Cplx> acc(static_cast<size_t>(n) * n * n, Cplx(0, 0));
  auto apply_phase = [&](std::vector<Cplx>& hat, double tau) {
    double dk = 2 * kPi / L;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz) {
          int wx = ix < n / 2 ? ix : ix - n;
          int wy = iy < n / 2 ? iy : iy - n;
          int wz = iz < n / 2 ? iz : iz - n;
          double k2 = dk * dk * (wx * wx + wy * wy + wz * wz);
          hat[(static_cast<size_t>(ix) * n + iy) * n + iz] *=
              std::exp(Cplx(0, -tau * k2));
        }
  };
  for (int k = 0; k < S; ++k) {
    Field3D fk = forcing_field((k + 0.5) * ds);
    fft3(fk.samples, n, -1);
    if (k > 0) apply_phase(acc, ds);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += fk.samples[i] * ds;
    if ((k + 1) % stride == 0) {
      std::vector<Cplx> snap = acc;
      apply_phase(snap, 0.5 * ds);
      fft3(snap, n, +1);
      Field3D u = Field3D::zero(L, n);
      u.samples = std::move(snap);
      double scale = 1.0 / (static_cast<double>(n) * n * n);
      for (auto& v : u.samples) v *= scale;
      times.push_back((k + 1) * ds);
      lhs_norms.push_back(weighted_lebesgue_norm(u, lhs_weight).value);
    }
  }

  // RHS: || ||F(s)||_{L^{rt'}(|x|^{rt' gamma_t})} ||_{L^{qt'}_s}.
  Field3D spatial = Field3D::from_function(L, n, [&](double x, double y,
                                                     double z) {
    double rho2 = (x * x + y * y + z * z) * d2;
    return Cplx(std::exp(-rho2), 0);
  });
  double spatial_norm = weighted_lebesgue_norm(spatial, dual_weight).value;
  int m_s = 256;
  std::vector<double> s_times, s_norms;
  for (int j = 0; j <= m_s; ++j) {
    double s = (1.0 / d2) * j / m_s;
    s_times.push_back(s);
    s_norms.push_back(time_bump(d2 * s) * spatial_norm);
  }
  double rhs = mixed_norm(s_times, s_norms, inv_qt_dual);

  RatioScan scan;
  for (size_t j = 2; j < times.size(); j += 2) {
    std::vector<double> tw(times.begin(), times.begin() + j + 1);
    std::vector<double> nw(lhs_norms.begin(), lhs_norms.begin() + j + 1);
    scan.window_ends.push_back(times[j]);
    scan.ratios.push_back(mixed_norm(tw, nw, cfg.inv_q) / rhs);
  }
  scan.final_ratio = scan.ratios.back();
  return scan;
}

}  // namespace wsl
