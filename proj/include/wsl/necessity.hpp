#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "wsl/exponents.hpp"
#include "wsl/fields.hpp"

namespace wsl {

// Smooth bump supported on [1, 2]: exp(-1/(1 - (2 rho - 3)^2)) inside, 0 out.
double annulus_bump(double rho);

// Duhamel TT* output of the frequency-annulus forcing, reduced to a 1D radial
// oscillatory integral and evaluated adaptively. For t < 1 only the elapsed
// part of the forcing window contributes (bounded as t -> 0+). Depends on |x|
// only; throws std::domain_error for t <= 0 or |x| <= 0.
std::complex<double> ttstar_annulus(double t, double x_mag);

struct GrowthScan {
  std::vector<double> params;  // N or R values
  std::vector<double> values;  // norm (or norm ratio) per parameter
  double fitted_exponent = 0;
  double predicted_exponent = 0;
  bool necessity_demonstrated = false;  // fitted exponent >= 0
};

// Truncated weighted norm of TT*F over t in [N, 2N] using the measured
// plateau amplitude |TT*F(3t, t)| and the exact annulus weight integral.
// Predicted exponent: -3/2 + 3/r - gamma + 1/q. Throws std::domain_error when
// gamma >= 3/r (the annulus weight integral itself diverges).
GrowthScan necessity_n2_scan(const Rat& inv_q, const Rat& inv_r,
                             const Rat& gamma,
                             const std::vector<double>& N_list);

// Oscillatory integral int_a^b e^{iN q(s)} psi(s) ds with one interior
// nondegenerate critical point.
struct StationaryPhaseProblem {
  std::function<double(double)> phase, dphase, d2phase;
  std::function<double(double)> amplitude;
  double a = 0, b = 1;
};

struct StationaryPhaseResult {
  double s_star = 0;
  std::complex<double> leading;  // J_* e^{iN q(s_*)} / sqrt(N)
  std::complex<double> direct;   // adaptive quadrature of I(N)
  double remainder = 0;          // |direct - leading|
};

// Solves q'(s_*) = 0 by bisection and compares the stationary-phase leading
// term with direct quadrature. Throws std::domain_error when no interior
// critical point is bracketed.
StationaryPhaseResult stationary_phase_eval(const StationaryPhaseProblem& p,
                                            double N);

// The chirped-ball phase q(s) = 2 s^2 - z^2/(t - s) with amplitude
// (t - s)^{-3/2} on [0, 1]; the interior critical point solves
// s = z^2 / (4 (t - s)^2).
StationaryPhaseProblem chirp_problem(double t, double z_mag);

// TT* of F(s, y) = e^{2 i R^2 s^2} on {0 < s < 1, |y| <= 1/(2R)}, evaluated at
// (t, x) with t in [4, 5] and 2R + 1/(2R) < |x| < 4R - 1/(2R) (throws
// std::domain_error outside). Inner s-integral by adaptive quadrature below
// R = 64 and by the stationary-phase leading term at R >= 64.
std::complex<double> ttstar_chirped(double R, double t,
                                    const std::array<double, 3>& x);

// Maximum of |(|y|^2 - 2 x.y)/(4(t - s_*))| over the ball and the stated
// (t, |x|) ranges for this R; the construction needs it <= 19/64.
double chirp_phase_bound(double R);

// Closed-form forcing norm (2R)^{-3/rt' - gamma_t}.
double chirped_forcing_norm(double R, const Rat& inv_rt, const Rat& gamma_t);

// LHS weighted norm over the annulus/time window vs the closed-form RHS per
// R; predicted exponent of LHS/RHS is 3*((1/r - gamma/3) - (1/rt - gamma_t/3)
// - 1/3). Throws std::domain_error when 3 - r*gamma <= 0.
GrowthScan necessity_n5_scan(const ExponentConfig& cfg,
                             const std::vector<double>& R_list);

}  // namespace wsl
