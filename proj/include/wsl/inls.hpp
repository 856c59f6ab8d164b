#pragma once

#include <vector>

#include "wsl/exponents.hpp"
#include "wsl/fields.hpp"

namespace wsl {

struct EquationParams {
  double alpha = 1.5;  // in [3/2, 11/6)
  int lambda = 1;      // +1 defocusing, -1 focusing
  double eps = 0;      // weight regularization (|x|^2 + eps^2)^{-alpha/2}

  double beta() const { return 4 - 2 * alpha; }
  void validate() const;  // throws std::invalid_argument
};

struct SolverConfig {
  double box_length = 16;
  int n = 64;
  double dt = 1.0 / 256;
  double t_final = 1;
  int cadence = 16;  // snapshot every this many steps

  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Field3D> snapshots;
};

// lambda (|x|^2 + eps^2)^{-alpha/2} |u|^beta u pointwise. eps = 0 requires the
// origin sample to vanish (throws std::domain_error otherwise).
Field3D nonlinearity(const Field3D& u, const EquationParams& params);

// Strang splitting: half nonlinear phase rotation, full spectral free flight,
// half rotation. Both substeps are exactly unitary on the grid.
Trajectory splitstep_evolve(const Field3D& u0, const EquationParams& params,
                            const SolverConfig& cfg);

struct PicardTrace {
  int m = 0;
  double w1_norm = 0;    // weighted mixed norm of the gradient (W^1 surrogate)
  double diff_norm = 0;  // d_m = surrogate distance to the previous iterate
  double ratio = 0;      // d_m / d_{m-1} when defined, else 0
};

// Picard iteration u^{(m)} = e^{itDelta}u0 - i lambda int_0^t e^{i(t-s)Delta}
// F(u^{(m-1)}) ds on [0, t_final]. The W^1 surrogate uses the (q0, r0, gamma0)
// exponents from wellposedness_exponents at params.alpha with the default
// (delta, gamma0, gammat0) choice. Throws std::runtime_error if an iterate
// norm grows beyond 10x the first (smallness hypothesis violated).
std::vector<PicardTrace> picard_iterate(const Field3D& u0,
                                        const EquationParams& params,
                                        double t_final, int m_max,
                                        const SolverConfig& cfg);

// u -> delta^{1/2} u(delta^2 t, delta x): exact index-preserving remap (the
// box shrinks by delta, times by delta^2).
Trajectory rescale_solution(const Trajectory& traj, double delta);

double h1_norm(const Field3D& u);  // ||grad u||_2 via the spectral gradient

// || |x|^b f ||_q / || |x|^a grad f ||_p over a Gaussian dilation family;
// exponent relations 1 <= p <= q < infinity, -3/q < b <= a,
// a - b - 1 = 3/q - 3/p checked exactly. Returns the max ratio.
struct EmbeddingScan {
  std::vector<double> deltas;
  std::vector<double> ratios;
  double max_ratio = 0;
  double max_relative_spread = 0;
};
EmbeddingScan sobolev_embedding_ratio(const Gaussian& f,
                                      const std::vector<double>& deltas,
                                      const Rat& a, const Rat& b,
                                      const Rat& inv_p, const Rat& inv_q);

}  // namespace wsl
