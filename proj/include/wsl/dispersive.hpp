#pragma once

#include <vector>

#include "wsl/exponents.hpp"
#include "wsl/fields.hpp"
#include "wsl/quadrature.hpp"

namespace wsl {

struct DecayExperiment {
  std::vector<double> times;
  std::vector<double> norms;  // || |x|^{-gamma} e^{itDelta} f ||_q
  double fitted_slope = 0;
  double predicted_slope = 0;  // (3/2)(1/q - 1/p') - (gamma + gamma_t)/2
  double residual = 0;
};

// Weighted decay fit for a Gaussian family. Hypotheses checked exactly on the
// rationals: 1 < p' <= q < infinity, gamma < 3/q, gamma_t - gamma = 3(1/p - 1/q).
// Throws std::invalid_argument when violated.
DecayExperiment decay_rate_fit(const Gaussian& family, const Rat& inv_q,
                               const Rat& inv_p_prime, const Rat& gamma,
                               const Rat& gamma_t,
                               const std::vector<double>& times);

// max over the dilation family of || |xi|^{-gamma} f_d^hat ||_q divided by
// || |x|^{gamma_t} f_d ||_{p'}; the ratio is dilation-invariant under the
// exponent relation. Throws std::invalid_argument on violated hypotheses.
struct PittScan {
  std::vector<double> deltas;
  std::vector<double> ratios;
  double max_ratio = 0;
  double max_relative_spread = 0;  // |ratio/ratio(1) - 1| maximum
};
PittScan pitt_ratio_scan(const Gaussian& f, const std::vector<double>& deltas,
                         const Rat& inv_q, const Rat& inv_p_prime,
                         const Rat& gamma, const Rat& gamma_t);

struct RatioScan {
  std::vector<double> window_ends;
  std::vector<double> ratios;  // cumulative LHS/RHS up to each window end
  double final_ratio = 0;
};

// Mixed weighted norm of e^{itDelta}f over [0, t_max] divided by the
// homogeneous Sobolev norm of f. Requires (q, r) in the homogeneous class.
RatioScan homogeneous_strichartz_ratio(const Gaussian& f, const Rat& inv_q,
                                       const Rat& inv_r, const Rat& gamma,
                                       const Rat& sigma, double t_max,
                                       int time_samples);

// Grid parameters for the inhomogeneous (Duhamel) ratio.
struct InhomRatioParams {
  double box_length = 32;
  int n = 64;
  int duhamel_steps = 32;
  double t_max = 4;
  int time_samples = 16;
};

// Forcing: Gaussian in space modulated by a smooth time bump on (0, 1),
// optionally rescaled by delta (F_delta(s, y) = F(delta^2 s, delta y)).
RatioScan inhomogeneous_strichartz_ratio(const ExponentConfig& cfg,
                                         const InhomRatioParams& params,
                                         double delta = 1.0);

}  // namespace wsl
