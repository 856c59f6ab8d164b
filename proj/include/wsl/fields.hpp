#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "wsl/rational.hpp"

namespace wsl {

using Cplx = std::complex<double>;

// Analytic handle A e^{-w|x|^2} with Re w > 0; carries closed-form norms and
// exact free evolution.
struct Gaussian {
  Cplx width;      // w
  Cplx amplitude;  // A

  Gaussian(Cplx w, Cplx a);

  Cplx eval(double rho) const;  // value at |x| = rho (radial)
  Gaussian dilated(double delta) const;  // x -> delta x
  Gaussian operator*(const Gaussian& other) const;

  double sup_norm() const { return std::abs(amplitude); }
  double l2_norm() const;
  // || |x|^{-gamma} g ||_r; throws std::domain_error when 3 - r*gamma <= 0.
  double weighted_lr_norm(double r, double gamma) const;
  double hs_norm(double sigma) const;  // || |xi|^sigma g^hat ||_2
};

inline Gaussian gaussian(Cplx width, Cplx amplitude) {
  return Gaussian(width, amplitude);
}

struct WeightSpec {
  Rat r_exponent;  // >= 1
  Rat gamma;

  WeightSpec(Rat r, Rat g);
};

struct NormResult {
  double value = 0;
  double error = 0;  // Richardson-style two-resolution estimate
};

// Radial samples on a geometric grid.
struct RadialProfile {
  std::vector<double> radii;
  std::vector<Cplx> values;

  static RadialProfile sample(const std::function<Cplx(double)>& f,
                              double r_min, double r_max, int n);
  RadialProfile coarsened() const;  // every other node
};

// Complex samples on an N^3 periodic box. Index (ix, iy, iz) flattened as
// (ix*n + iy)*n + iz; coordinate of index i is wrap(i)*h with
// wrap(i) = i for i < n/2, i - n otherwise (origin at index 0).
struct Field3D {
  double box_length = 1;
  int n = 0;
  std::vector<Cplx> samples;

  static Field3D zero(double box_length, int n);
  static Field3D from_function(
      double box_length, int n,
      const std::function<Cplx(double, double, double)>& f);
  static Field3D from_gaussian(double box_length, int n, const Gaussian& g);

  double h() const { return box_length / n; }
  double coord(int i) const { return (i < n / 2 ? i : i - n) * h(); }
  Cplx& at(int ix, int iy, int iz) {
    return samples[(static_cast<size_t>(ix) * n + iy) * n + iz];
  }
  const Cplx& at(int ix, int iy, int iz) const {
    return samples[(static_cast<size_t>(ix) * n + iy) * n + iz];
  }
  double l2_norm() const;
};

// (int |x|^{-r*gamma} |f|^r dx)^{1/r}. Radial profiles integrate the linear
// interpolant of |f|^r against the power weight exactly per cell; 3D grids
// use the midpoint rule with the origin cell integrated analytically.
// Throws std::domain_error on a divergent origin weight (gamma >= 3/r with
// nonvanishing data near 0).
NormResult weighted_lebesgue_norm(const RadialProfile& f,
                                  const WeightSpec& spec);
NormResult weighted_lebesgue_norm(const Field3D& f, const WeightSpec& spec);

// L_t^q composition of per-snapshot spatial norms over the given time grid
// (trapezoid rule); inv_q = 0 means the supremum.
double mixed_norm(const std::vector<double>& times,
                  const std::vector<double>& spatial_norms, const Rat& inv_q);

// || |xi|^sigma f^hat ||_2 with sigma in (-3/2, 3/2). Radial route uses the
// spherical (sine-kernel) transform by quadrature; 3D route uses the FFT with
// the zero mode weighted analytically (it vanishes for sigma > 0).
double hs_norm(const RadialProfile& f, double sigma);
double hs_norm(const Field3D& f, double sigma);

// Flat binary serialization (small header + raw complex samples) and CSV.
void save_field(const Field3D& f, const std::string& path);
Field3D load_field(const std::string& path);

}  // namespace wsl
