#include "wsl/fields.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "wsl/fft.hpp"

namespace wsl {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^inf rho^{s-1} e^{-c rho^2} d rho = Gamma(s/2) c^{-s/2} / 2.
double gaussian_radial_moment(double s, double c) {
  return 0.5 * std::tgamma(0.5 * s) * std::pow(c, -0.5 * s);
}

// int rho^p (a + b rho) d rho over [lo, hi], exact.
double power_linear_integral(double p, double a, double b, double lo,
                             double hi) {
  auto term = [&](double e, double coef) {
    if (coef == 0) return 0.0;
    if (std::abs(e) < 1e-12) return coef * std::log(hi / lo);
    return coef * (std::pow(hi, e) - std::pow(lo, e)) / e;
  };
  return term(p + 1, a) + term(p + 2, b);
}

}  // namespace

Gaussian::Gaussian(Cplx w, Cplx a) : width(w), amplitude(a) {
  if (!(w.real() > 0))
    throw std::invalid_argument("gaussian: non-decaying width");
}

Cplx Gaussian::eval(double rho) const {
  return amplitude * std::exp(-width * rho * rho);
}

Gaussian Gaussian::dilated(double delta) const {
  return Gaussian(width * delta * delta, amplitude);
}

Gaussian Gaussian::operator*(const Gaussian& other) const {
  return Gaussian(width + other.width, amplitude * other.amplitude);
}

double Gaussian::l2_norm() const {
  return std::abs(amplitude) * std::pow(kPi / (2 * width.real()), 0.75);
}

double Gaussian::weighted_lr_norm(double r, double gamma) const {
  if (!(r >= 1)) throw std::invalid_argument("norm exponent must be >= 1");
  double s = 3 - r * gamma;  // radial moment order
  if (!(s > 0))
    throw std::domain_error("weighted norm divergent at the origin");
  double integral = std::pow(std::abs(amplitude), r) * 4 * kPi *
                    gaussian_radial_moment(s, r * width.real());
  return std::pow(integral, 1.0 / r);
}

double Gaussian::hs_norm(double sigma) const {
  if (!(sigma > -1.5 && sigma < 1.5))
    throw std::invalid_argument("sigma outside (-3/2, 3/2)");
  // g^hat = A (2w)^{-3/2} e^{-|xi|^2/(4w)}.
  double c = (0.5 / width).real();  // decay rate of |g^hat|^2 is via Re(1/2w)
  double sq = std::abs(amplitude) * std::abs(amplitude) *
              std::pow(std::abs(2.0 * width), -3.0) * 4 * kPi *
              gaussian_radial_moment(3 + 2 * sigma, c);
  return std::sqrt(sq);
}

WeightSpec::WeightSpec(Rat r, Rat g) : r_exponent(std::move(r)), gamma(std::move(g)) {
  if (r_exponent < 1)
    throw std::invalid_argument("weight spec: r_exponent must be >= 1");
}

RadialProfile RadialProfile::sample(const std::function<Cplx(double)>& f,
                                    double r_min, double r_max, int n) {
  if (!(0 < r_min && r_min < r_max) || n < 2)
    throw std::invalid_argument("radial profile: bad grid request");
  RadialProfile p;
  p.radii.resize(n);
  p.values.resize(n);
  double ratio = std::pow(r_max / r_min, 1.0 / (n - 1));
  for (int i = 0; i < n; ++i) {
    p.radii[i] = r_min * std::pow(ratio, i);
    p.values[i] = f(p.radii[i]);
  }
  return p;
}

RadialProfile RadialProfile::coarsened() const {
  RadialProfile p;
  for (size_t i = 0; i < radii.size(); i += 2) {
    p.radii.push_back(radii[i]);
    p.values.push_back(values[i]);
  }
  return p;
}

namespace {

double radial_weighted_power_integral(const RadialProfile& f, double r,
                                      double gamma) {
  double p = 2 - r * gamma;
  double g0 = std::pow(std::abs(f.values.front()), r);
  double integral = 0;
  // Origin cell: constant extrapolation against the pure power weight.
  if (p <= -1) {
    if (g0 > 1e-300)
      throw std::domain_error("weighted norm divergent at the origin");
  } else {
    integral += g0 * std::pow(f.radii.front(), p + 1) / (p + 1);
  }
  for (size_t i = 0; i + 1 < f.radii.size(); ++i) {
    double lo = f.radii[i], hi = f.radii[i + 1];
    double gl = std::pow(std::abs(f.values[i]), r);
    double gh = std::pow(std::abs(f.values[i + 1]), r);
    double slope = (gh - gl) / (hi - lo);
    integral += power_linear_integral(p, gl - slope * lo, slope, lo, hi);
  }
  return 4 * kPi * integral;
}

}  // namespace

NormResult weighted_lebesgue_norm(const RadialProfile& f,
                                  const WeightSpec& spec) {
  if (f.radii.size() < 4)
    throw std::invalid_argument("radial profile too short");
  double r = to_double(spec.r_exponent);
  double gamma = to_double(spec.gamma);
  double fine = radial_weighted_power_integral(f, r, gamma);
  double coarse = radial_weighted_power_integral(f.coarsened(), r, gamma);
  // Second-order base rule: one Richardson step removes the leading term.
  double extrap = fine + (fine - coarse) / 3.0;
  double value = std::pow(std::max(extrap, 0.0), 1.0 / r);
  return {value, std::abs(value - std::pow(fine, 1.0 / r))};
}

NormResult weighted_lebesgue_norm(const Field3D& f, const WeightSpec& spec) {
  double r = to_double(spec.r_exponent);
  double gamma = to_double(spec.gamma);
  double h = f.h();
  double cell = h * h * h;
  double integral = 0;
  for (int ix = 0; ix < f.n; ++ix)
    for (int iy = 0; iy < f.n; ++iy)
      for (int iz = 0; iz < f.n; ++iz) {
        double x = f.coord(ix), y = f.coord(iy), z = f.coord(iz);
        double rho2 = x * x + y * y + z * z;
        double m = std::pow(std::abs(f.at(ix, iy, iz)), r);
        if (rho2 == 0) continue;  // handled analytically below
        integral += cell * std::pow(rho2, -0.5 * r * gamma) * m;
      }
  // Origin cell: constant value against the power weight over the
  // equal-volume ball of radius a.
  double m0 = std::pow(std::abs(f.at(0, 0, 0)), r);
  double origin = 0;
  double s = 3 - r * gamma;
  if (s <= 0) {
    if (m0 > 1e-300)
      throw std::domain_error("weighted norm divergent at the origin");
  } else {
    double a = std::cbrt(3.0 / (4 * kPi)) * h;
    origin = m0 * 4 * kPi * std::pow(a, s) / s;
  }
  double value = std::pow(integral + origin, 1.0 / r);
  double without = std::pow(integral, 1.0 / r);
  return {value, std::abs(value - without)};
}

double mixed_norm(const std::vector<double>& times,
                  const std::vector<double>& spatial_norms, const Rat& inv_q) {
  if (times.empty() || times.size() != spatial_norms.size())
    throw std::invalid_argument("mixed norm: empty or mismatched snapshots");
  for (size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i] < times[i + 1]))
      throw std::invalid_argument("mixed norm: time grid not increasing");
  if (inv_q == 0) {
    double m = 0;
    for (double v : spatial_norms) m = std::max(m, v);
    return m;
  }
  if (times.size() == 1) return spatial_norms[0];
  double q = 1.0 / to_double(inv_q);
  double integral = 0;
  for (size_t i = 0; i + 1 < times.size(); ++i)
    integral += 0.5 * (times[i + 1] - times[i]) *
                (std::pow(spatial_norms[i], q) +
                 std::pow(spatial_norms[i + 1], q));
  return std::pow(integral, 1.0 / q);
}

double hs_norm(const RadialProfile& f, double sigma) {
  if (!(sigma > -1.5 && sigma < 1.5))
    throw std::invalid_argument("sigma outside (-3/2, 3/2)");
  // f^hat(k) = (2pi)^{-3/2} (4pi/k) int sin(k rho) rho f(rho) d rho.
  int nk = 512;
  double k_min = 1e-3, k_max = 8.0 / f.radii.front();
  k_max = std::min(k_max, 64.0);
  RadialProfile hat = RadialProfile::sample(
      [&](double k) {
        Cplx acc = 0;
        for (size_t i = 0; i + 1 < f.radii.size(); ++i) {
          double lo = f.radii[i], hi = f.radii[i + 1];
          Cplx gl = std::sin(k * lo) * lo * f.values[i];
          Cplx gh = std::sin(k * hi) * hi * f.values[i + 1];
          acc += 0.5 * (hi - lo) * (gl + gh);
        }
        return std::pow(2 * kPi, -1.5) * 4 * kPi / k * acc;
      },
      k_min, k_max, nk);
  // || |k|^sigma f^hat ||_2 by the same power-times-linear cell quadrature.
  double p = 2 + 2 * sigma;
  double integral = 0;
  double g0 = std::norm(hat.values.front());
  integral += g0 * std::pow(hat.radii.front(), p + 1) / (p + 1);
  for (size_t i = 0; i + 1 < hat.radii.size(); ++i) {
    double lo = hat.radii[i], hi = hat.radii[i + 1];
    double gl = std::norm(hat.values[i]);
    double gh = std::norm(hat.values[i + 1]);
    double slope = (gh - gl) / (hi - lo);
    integral += power_linear_integral(p, gl - slope * lo, slope, lo, hi);
  }
  return std::sqrt(4 * kPi * integral);
}

double hs_norm(const Field3D& f, double sigma) {
  if (!(sigma > -1.5 && sigma < 1.5))
    throw std::invalid_argument("sigma outside (-3/2, 3/2)");
  std::vector<Cplx> hat = f.samples;
  fft3(hat, f.n, -1);
  double h = f.h();
  double scale = std::pow(h, 3) * std::pow(2 * kPi, -1.5);  // DFT -> transform
  double dk = 2 * kPi / f.box_length;
  double sq = 0;
  for (int ix = 0; ix < f.n; ++ix)
    for (int iy = 0; iy < f.n; ++iy)
      for (int iz = 0; iz < f.n; ++iz) {
        int wx = ix < f.n / 2 ? ix : ix - f.n;
        int wy = iy < f.n / 2 ? iy : iy - f.n;
        int wz = iz < f.n / 2 ? iz : iz - f.n;
        double k2 = dk * dk * (wx * wx + wy * wy + wz * wz);
        if (k2 == 0 && sigma != 0) continue;  // zero mode excluded
        double w = sigma == 0 ? 1.0 : std::pow(k2, sigma);
        sq += w * std::norm(scale * hat[(static_cast<size_t>(ix) * f.n + iy) *
                                            f.n +
                                        iz]);
      }
  return std::sqrt(sq * dk * dk * dk);
}

Field3D Field3D::zero(double box_length, int n) {
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two");
  if (!(box_length > 0)) throw std::invalid_argument("box length must be > 0");
  Field3D f;
  f.box_length = box_length;
  f.n = n;
  f.samples.assign(static_cast<size_t>(n) * n * n, Cplx(0, 0));
  return f;
}

Field3D Field3D::from_function(
    double box_length, int n,
    const std::function<Cplx(double, double, double)>& fn) {
  Field3D f = zero(box_length, n);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz)
        f.at(ix, iy, iz) = fn(f.coord(ix), f.coord(iy), f.coord(iz));
  return f;
}

Field3D Field3D::from_gaussian(double box_length, int n, const Gaussian& g) {
  return from_function(box_length, n, [&](double x, double y, double z) {
    return g.amplitude * std::exp(-g.width * (x * x + y * y + z * z));
  });
}

double Field3D::l2_norm() const {
  double sq = 0;
  for (const Cplx& v : samples) sq += std::norm(v);
  return std::sqrt(sq) * std::pow(h(), 1.5);
}

void save_field(const Field3D& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  const char magic[4] = {'W', 'S', 'F', '1'};
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&f.n), sizeof(f.n));
  out.write(reinterpret_cast<const char*>(&f.box_length),
            sizeof(f.box_length));
  out.write(reinterpret_cast<const char*>(f.samples.data()),
            static_cast<std::streamsize>(f.samples.size() * sizeof(Cplx)));
}

Field3D load_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (std::string(magic, 4) != "WSF1")
    throw std::runtime_error("bad field container header");
  int n = 0;
  double L = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&L), sizeof(L));
  Field3D f = Field3D::zero(L, n);
  in.read(reinterpret_cast<char*>(f.samples.data()),
          static_cast<std::streamsize>(f.samples.size() * sizeof(Cplx)));
  if (!in) throw std::runtime_error("truncated field container");
  return f;
}

}  // namespace wsl
