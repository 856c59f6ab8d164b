#include "wsl/inls.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wsl/fft.hpp"
#include "wsl/propagator.hpp"
#include "wsl/quadrature.hpp"

namespace wsl {

namespace {
constexpr double kPi = std::numbers::pi;

bool power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

// (|x|^2 + eps^2)^{-alpha/2} on the grid.
std::vector<double> weight_samples(const Field3D& u,
                                   const EquationParams& params) {
  std::vector<double> v(u.samples.size());
  for (int ix = 0; ix < u.n; ++ix)
    for (int iy = 0; iy < u.n; ++iy)
      for (int iz = 0; iz < u.n; ++iz) {
        double x = u.coord(ix), y = u.coord(iy), z = u.coord(iz);
        double s = x * x + y * y + z * z + params.eps * params.eps;
        v[(static_cast<size_t>(ix) * u.n + iy) * u.n + iz] =
            s == 0 ? 0.0 : std::pow(s, -params.alpha / 2);
      }
  return v;
}

void apply_free_phase(std::vector<Cplx>& hat, int n, double L, double tau) {
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
}

Field3D from_hat(std::vector<Cplx> hat, int n, double L) {
  fft3(hat, n, +1);
  Field3D out = Field3D::zero(L, n);
  out.samples = std::move(hat);
  double scale = 1.0 / (static_cast<double>(n) * n * n);
  for (auto& v : out.samples) v *= scale;
  return out;
}

// |grad u| as a real-valued grid field via the spectral gradient.
Field3D gradient_magnitude(const Field3D& u) {
  int n = u.n;
  std::vector<Cplx> hat = u.samples;
  fft3(hat, n, -1);
  double dk = 2 * kPi / u.box_length;
  std::vector<double> mag2(hat.size(), 0.0);
  for (int d = 0; d < 3; ++d) {
    std::vector<Cplx> comp = hat;
    for (int ix = 0; ix < n; ++ix)
      for (int iy = 0; iy < n; ++iy)
        for (int iz = 0; iz < n; ++iz) {
          int w[3] = {ix < n / 2 ? ix : ix - n, iy < n / 2 ? iy : iy - n,
                      iz < n / 2 ? iz : iz - n};
          comp[(static_cast<size_t>(ix) * n + iy) * n + iz] *=
              Cplx(0, dk * w[d]);
        }
    fft3(comp, n, +1);
    double scale = 1.0 / (static_cast<double>(n) * n * n);
    for (size_t i = 0; i < comp.size(); ++i) {
      Cplx v = comp[i] * scale;
      mag2[i] += std::norm(v);
    }
  }
  Field3D out = Field3D::zero(u.box_length, n);
  for (size_t i = 0; i < mag2.size(); ++i)
    out.samples[i] = Cplx(std::sqrt(mag2[i]), 0);
  return out;
}
}  // namespace

void EquationParams::validate() const {
  if (!(alpha >= 1.5 && alpha < 11.0 / 6.0))
    throw std::invalid_argument("equation: alpha must lie in [3/2, 11/6)");
  if (lambda != 1 && lambda != -1)
    throw std::invalid_argument("equation: lambda must be +1 or -1");
  if (!(eps >= 0))
    throw std::invalid_argument("equation: eps must be >= 0");
}

void SolverConfig::validate() const {
  if (!(box_length > 0) || !power_of_two(n))
    throw std::invalid_argument("solver: box/grid invalid");
  if (!(dt > 0) || !(t_final > 0) || cadence < 1)
    throw std::invalid_argument("solver: time stepping invalid");
}

Field3D nonlinearity(const Field3D& u, const EquationParams& params) {
  params.validate();
  if (params.eps == 0 && std::abs(u.samples[0]) != 0)
    throw std::domain_error(
        "nonlinearity: singular weight needs a vanishing origin sample");
  auto V = weight_samples(u, params);
  Field3D out = u;
  double beta = params.beta();
  for (size_t i = 0; i < out.samples.size(); ++i) {
    double mag = std::abs(u.samples[i]);
    out.samples[i] =
        double(params.lambda) * V[i] * std::pow(mag, beta) * u.samples[i];
  }
  if (params.eps == 0) out.samples[0] = 0;
  return out;
}

Trajectory splitstep_evolve(const Field3D& u0, const EquationParams& params,
                            const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  if (u0.n != cfg.n || u0.box_length != cfg.box_length)
    throw std::invalid_argument("splitstep: initial data grid mismatch");
  long steps = std::lround(cfg.t_final / cfg.dt);
  if (steps < 1 || std::abs(steps * cfg.dt - cfg.t_final) > 1e-12 * cfg.t_final)
    throw std::invalid_argument("splitstep: t_final must be a multiple of dt");

  auto V = weight_samples(u0, params);
  double beta = params.beta();
  auto half_rotation = [&](Field3D& u) {
    for (size_t i = 0; i < u.samples.size(); ++i) {
      double mag = std::abs(u.samples[i]);
      if (V[i] == 0 || mag == 0) continue;
      double phase = -params.lambda * (cfg.dt / 2) * V[i] * std::pow(mag, beta);
      u.samples[i] *= std::exp(Cplx(0, phase));
    }
    if (params.eps == 0) {
      // The singular origin weight is only consistent with a vanishing
      // origin sample; the exactly-unitary rotation keeps it at zero.
      u.samples[0] = 0;
    }
  };

  Trajectory traj;
  Field3D u = u0;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u);
  for (long k = 0; k < steps; ++k) {
    half_rotation(u);
    u = propagate_spectral(u, cfg.dt);
    half_rotation(u);
    if ((k + 1) % cfg.cadence == 0 || k + 1 == steps) {
      traj.times.push_back((k + 1) * cfg.dt);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

std::vector<PicardTrace> picard_iterate(const Field3D& u0,
                                        const EquationParams& params,
                                        double t_final, int m_max,
                                        const SolverConfig& cfg) {
  params.validate();
  cfg.validate();
  if (m_max < 1 || !(t_final > 0))
    throw std::invalid_argument("picard: bad iteration request");
  if (u0.n != cfg.n || u0.box_length != cfg.box_length)
    throw std::invalid_argument("picard: initial data grid mismatch");
  int M = static_cast<int>(std::lround(t_final / cfg.dt));
  if (M < 2) throw std::invalid_argument("picard: need >= 2 time steps");
  double ds = t_final / M;
  int n = cfg.n;
  double L = cfg.box_length;

  auto wp = wellposedness_exponents(Rat(mpq_class(params.alpha)),
                                    frac(1, 100), frac(1, 4), frac(1, 2));
  WeightSpec weight(1 / wp.inv_r0, wp.gamma0);
  auto surrogate_spatial = [&](const Field3D& u) {
    return weighted_lebesgue_norm(gradient_magnitude(u), weight).value;
  };

  // Surrogate sample times: every cadence-th midpoint node plus t_final.
  std::vector<int> surr_nodes;
  for (int k = 0; k < M; ++k)
    if ((k + 1) % cfg.cadence == 0) surr_nodes.push_back(k);

  // Free-flight fields at the midpoint nodes and t_final (iterate 0).
  std::vector<Cplx> u0_hat = u0.samples;
  fft3(u0_hat, n, -1);
  auto free_at = [&](double t) {
    std::vector<Cplx> hat = u0_hat;
    apply_free_phase(hat, n, L, t);
    return from_hat(std::move(hat), n, L);
  };
  std::vector<Field3D> iter;  // current iterate at midpoint nodes
  iter.reserve(M);
  std::vector<Field3D> free_nodes;
  free_nodes.reserve(M);
  for (int k = 0; k < M; ++k) {
    free_nodes.push_back(free_at((k + 0.5) * ds));
    iter.push_back(free_nodes.back());
  }
  Field3D free_final = free_at(t_final);
  Field3D iter_final = free_final;

  auto mixed_surrogate = [&](const std::vector<Field3D>& nodes,
                             const Field3D& fin) {
    std::vector<double> ts, norms;
    for (int k : surr_nodes) {
      ts.push_back((k + 0.5) * ds);
      norms.push_back(surrogate_spatial(nodes[k]));
    }
    ts.push_back(t_final);
    norms.push_back(surrogate_spatial(fin));
    return mixed_norm(ts, norms, wp.inv_q0);
  };

  std::vector<PicardTrace> traces;
  PicardTrace t0;
  t0.m = 0;
  t0.w1_norm = mixed_surrogate(iter, iter_final);
  t0.diff_norm = t0.w1_norm;  // distance from the zero iterate
  t0.ratio = 0;
  traces.push_back(t0);
  double first_norm = t0.w1_norm;

  for (int m = 1; m <= m_max; ++m) {
    std::vector<Cplx> acc(u0.samples.size(), Cplx(0, 0));
    std::vector<double> ts, norms, diff_norms;
    for (int k = 0; k < M; ++k) {
      Field3D F = nonlinearity(iter[k], params);
      fft3(F.samples, n, -1);
      if (k > 0) apply_free_phase(acc, n, L, ds);
      // Value of the new iterate at node k: the prefix integral advanced a
      // half step plus the current node's half cell.
      std::vector<Cplx> val_hat = acc;
      apply_free_phase(val_hat, n, L, 0.5 * ds);
      for (size_t i = 0; i < val_hat.size(); ++i)
        val_hat[i] = val_hat[i] + F.samples[i] * (0.5 * ds);
      Field3D duh = from_hat(std::move(val_hat), n, L);
      Field3D next = free_nodes[k];
      for (size_t i = 0; i < next.samples.size(); ++i)
        next.samples[i] -= Cplx(0, 1) * duh.samples[i];
      if ((k + 1) % cfg.cadence == 0) {
        Field3D diff = next;
        for (size_t i = 0; i < diff.samples.size(); ++i)
          diff.samples[i] -= iter[k].samples[i];
        ts.push_back((k + 0.5) * ds);
        norms.push_back(surrogate_spatial(next));
        diff_norms.push_back(surrogate_spatial(diff));
      }
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += F.samples[i] * ds;
      iter[k] = std::move(next);
    }
    apply_free_phase(acc, n, L, 0.5 * ds);
    Field3D duh_final = from_hat(std::move(acc), n, L);
    Field3D next_final = free_final;
    for (size_t i = 0; i < next_final.samples.size(); ++i)
      next_final.samples[i] -= Cplx(0, 1) * duh_final.samples[i];
    Field3D diff_final = next_final;
    for (size_t i = 0; i < diff_final.samples.size(); ++i)
      diff_final.samples[i] -= iter_final.samples[i];
    ts.push_back(t_final);
    norms.push_back(surrogate_spatial(next_final));
    diff_norms.push_back(surrogate_spatial(diff_final));
    iter_final = std::move(next_final);

    PicardTrace tr;
    tr.m = m;
    tr.w1_norm = mixed_norm(ts, norms, wp.inv_q0);
    tr.diff_norm = mixed_norm(ts, diff_norms, wp.inv_q0);
    tr.ratio = m >= 2 && traces.back().diff_norm > 0
                   ? tr.diff_norm / traces.back().diff_norm
                   : 0;
    if (tr.w1_norm > 10 * first_norm)
      throw std::runtime_error("picard: iterate norm grew beyond 10x the "
                               "free evolution (data not small)");
    traces.push_back(tr);
  }
  return traces;
}

Trajectory rescale_solution(const Trajectory& traj, double delta) {
  if (!(delta > 0))
    throw std::invalid_argument("rescale: delta must be positive");
  Trajectory out;
  double amp = std::sqrt(delta);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    out.times.push_back(traj.times[i] / (delta * delta));
    Field3D f = traj.snapshots[i];
    f.box_length /= delta;
    for (auto& v : f.samples) v *= amp;
    out.snapshots.push_back(std::move(f));
  }
  return out;
}

double h1_norm(const Field3D& u) { return hs_norm(u, 1.0); }

EmbeddingScan sobolev_embedding_ratio(const Gaussian& f,
                                      const std::vector<double>& deltas,
                                      const Rat& a, const Rat& b,
                                      const Rat& inv_p, const Rat& inv_q) {
  if (!(inv_q > 0 && inv_p <= 1 && inv_p >= inv_q))
    throw std::invalid_argument("embedding: need 1 <= p <= q < infinity");
  if (!(b > -3 * inv_q && b <= a))
    throw std::invalid_argument("embedding: need -3/q < b <= a");
  if (a - b - 1 != 3 * inv_q - 3 * inv_p)
    throw std::invalid_argument(
        "embedding: need a - b - 1 = 3/q - 3/p");

  double q = 1.0 / to_double(inv_q);
  double p = 1.0 / to_double(inv_p);
  double ad = to_double(a), bd = to_double(b);
  auto ratio_at = [&](double d) {
    Gaussian fd = f.dilated(d);
    double num = fd.weighted_lr_norm(q, -bd);
    // || |x|^a grad f ||_p for grad(A e^{-w|x|^2}) = -2 w A x e^{-w|x|^2}.
    double rw = fd.width.real();
    double s = 3 + p * (1 + ad);
    double integral = 4 * kPi * 0.5 * std::tgamma(s / 2) *
                      std::pow(p * rw, -s / 2);
    double den = std::abs(2.0 * fd.width * fd.amplitude) *
                 std::pow(integral, 1.0 / p);
    return num / den;
  };
  EmbeddingScan scan;
  scan.deltas = deltas;
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

}  // namespace wsl
