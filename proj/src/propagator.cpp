#include "wsl/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wsl/fft.hpp"
#include "wsl/quadrature.hpp"

namespace wsl {

namespace {
constexpr double kPi = std::numbers::pi;

// e^{-i t |xi|^2} multiplier applied in place to a frequency-space cube.
void apply_free_multiplier(std::vector<Cplx>& hat, int n, double box_length,
                           double t) {
  double dk = 2 * kPi / box_length;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        int wx = ix < n / 2 ? ix : ix - n;
        int wy = iy < n / 2 ? iy : iy - n;
        int wz = iz < n / 2 ? iz : iz - n;
        double k2 = dk * dk * (wx * wx + wy * wy + wz * wz);
        hat[(static_cast<size_t>(ix) * n + iy) * n + iz] *=
            std::exp(Cplx(0, -t * k2));
      }
}
}  // namespace

Gaussian propagate_gaussian(const Gaussian& g, double t) {
  Cplx denom = 1.0 + Cplx(0, 4 * t) * g.width;
  return Gaussian(g.width / denom, g.amplitude * std::pow(denom, -1.5));
}

Field3D propagate_spectral(const Field3D& f, double t) {
  Field3D out = f;
  fft3(out.samples, out.n, -1);
  apply_free_multiplier(out.samples, out.n, out.box_length, t);
  fft3(out.samples, out.n, +1);
  double scale = 1.0 / (static_cast<double>(out.n) * out.n * out.n);
  for (auto& v : out.samples) v *= scale;
  return out;
}

std::vector<Cplx> propagate_kernel(
    const Field3D& source, double t,
    const std::vector<std::array<double, 3>>& targets) {
  if (t == 0) throw std::domain_error("kernel propagation undefined at t = 0");
  double h = source.h();
  // Collect the support.
  struct Node {
    double x, y, z;
    Cplx v;
  };
  std::vector<Node> support;
  double max_r = 0;
  for (int ix = 0; ix < source.n; ++ix)
    for (int iy = 0; iy < source.n; ++iy)
      for (int iz = 0; iz < source.n; ++iz) {
        Cplx v = source.at(ix, iy, iz);
        if (std::abs(v) == 0) continue;
        Node nd{source.coord(ix), source.coord(iy), source.coord(iz), v};
        support.push_back(nd);
        max_r = std::max(max_r,
                         std::sqrt(nd.x * nd.x + nd.y * nd.y + nd.z * nd.z));
      }
  Cplx prefactor = std::pow(Cplx(0, 4 * kPi * t), -1.5);
  std::vector<Cplx> out;
  out.reserve(targets.size());
  for (const auto& tgt : targets) {
    // Phase-resolution guard: |grad phase| * h < pi/4 over the support.
    double dist = std::sqrt(tgt[0] * tgt[0] + tgt[1] * tgt[1] +
                            tgt[2] * tgt[2]) +
                  max_r;
    if (dist * h / (2 * std::abs(t)) >= kPi / 4)
      throw QuadratureError(
          "kernel quadrature: phase variation per cell exceeds pi/4");
    Cplx acc = 0;
    for (const auto& nd : support) {
      double dx = tgt[0] - nd.x, dy = tgt[1] - nd.y, dz = tgt[2] - nd.z;
      double r2 = dx * dx + dy * dy + dz * dz;
      acc += std::exp(Cplx(0, r2 / (4 * t))) * nd.v;
    }
    out.push_back(prefactor * acc * h * h * h);
  }
  return out;
}

Field3D duhamel(const std::function<Field3D(double)>& forcing, double t,
                int steps) {
  if (steps < 1) throw std::invalid_argument("duhamel: steps < 1");
  double ds = t / steps;
  Field3D first = forcing(0.5 * ds);
  std::vector<Cplx> acc(first.samples.size(), Cplx(0, 0));
  int n = first.n;
  double L = first.box_length;
  for (int k = 0; k < steps; ++k) {
    Field3D fk = k == 0 ? first : forcing((k + 0.5) * ds);
    if (fk.n != n || fk.box_length != L)
      throw std::invalid_argument("duhamel: forcing grid changed");
    fft3(fk.samples, n, -1);
    // Shift the running sum one step back in time and add the new node.
    if (k > 0) apply_free_multiplier(acc, n, L, ds);
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += fk.samples[i] * ds;
  }
  // Remaining half step from the last midpoint node to t.
  apply_free_multiplier(acc, n, L, 0.5 * ds);
  Field3D out = Field3D::zero(L, n);
  out.samples = std::move(acc);
  fft3(out.samples, n, +1);
  double scale = 1.0 / (static_cast<double>(n) * n * n);
  for (auto& v : out.samples) v *= scale;
  return out;
}

}  // namespace wsl
