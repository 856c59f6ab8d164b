#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wsl/conditions.hpp"
#include "wsl/rational.hpp"

namespace wsl {

// Reciprocals of the Lebesgue exponents of an inhomogeneous estimate
// configuration, together with the weight powers and smoothing index.
// q = infinity is encoded as inv_q = 0.
struct ExponentConfig {
  Rat inv_q, inv_r, inv_qt, inv_rt;
  Rat gamma, gamma_t;
  Rat sigma;
  int dim = 3;
};

// --- Admissibility classes ---------------------------------------------

// Homogeneous weighted class: the four clauses checked exactly. For sigma = 0
// the reduced form (scaling equality plus the window on 1/r) is also reported.
struct AdMembership {
  Membership full;
  std::optional<Membership> reduced;  // present iff sigma == 0
};

AdMembership ad_membership(const Rat& inv_q, const Rat& inv_r, const Rat& gamma,
                           const Rat& sigma);

Membership ac_membership(const Rat& inv_q, const Rat& inv_r, const Rat& gamma,
                         const Rat& sigma);

enum class InhomBranch { Diagonal, Upper, Lower };

// Result of the inhomogeneous admissibility check. The smoothing index is
// solved from the scaling equality of each pair; the two solutions must agree.
struct InhomAdmissibility {
  Membership membership;
  Rat sigma;          // solved value (from the (q, r) pair)
  Rat sigma_gap;      // sigma + sigma_tilde; zero iff the scaling condition holds
  InhomBranch branch = InhomBranch::Diagonal;
};

InhomAdmissibility inhomogeneous_admissible(const ExponentConfig& cfg);

// Necessary conditions for the inhomogeneous estimate, general dimension.
Membership necessary_conditions(const ExponentConfig& cfg);

// --- Exponent bookkeeping ----------------------------------------------

Rat beta_exponent(const Rat& inv_a, const Rat& inv_b, const Rat& inv_at,
                  const Rat& inv_bt, const Rat& gamma, const Rat& gamma_t);

struct PerturbedConfig {
  ExponentConfig cfg;
  Rat beta;
};

// The three perturbed exponent pairs used by the bilinear interpolation step,
// with their localization exponents. For a scaling-exact input the betas are
// exactly (2 eps0, -eps0, -eps0).
struct Perturbation {
  PerturbedConfig both_down;  // (q0, qt0)
  PerturbedConfig down_up;    // (q0, qt1)
  PerturbedConfig up_down;    // (q1, qt0)
};

Perturbation perturb_exponents(const ExponentConfig& cfg, const Rat& eps0);

// --- Well-posedness exponents -------------------------------------------

struct WPExponents {
  Rat inv_q0, inv_r0, inv_qt0, inv_rt0;
  Rat gamma0, gammat0;
  Rat delta, alpha, beta;  // beta = 4 - 2 alpha
};

// Derives the solution/nonlinearity space exponents for given alpha in
// [3/2, 11/6) and validates the whole constraint chain; throws
// std::invalid_argument naming the first failing constraint.
WPExponents wellposedness_exponents(const Rat& alpha, const Rat& delta,
                                    const Rat& gamma0, const Rat& gammat0);

// Searches a small rational grid of (delta, gamma0, gammat0) for a feasible
// tuple at the given alpha; gammat0 is centered in its admissible interval.
std::optional<WPExponents> wellposedness_search(const Rat& alpha);

// --- Feasible region in the (1/r, 1/rt) plane ---------------------------

struct RegionLine {
  std::string name;    // paper condition tag (possibly a combined tag)
  Rat a, b, c;         // a*(1/r) + b*(1/rt) <= c (or < c)
  bool strict = false;
};

struct RegionVertex {
  Rat inv_r, inv_rt;
  std::vector<std::string> on_lines;
};

struct RegionPolygon {
  bool empty = true;
  std::vector<RegionVertex> vertices;  // counter-clockwise
  std::vector<RegionLine> lines;       // bounding lines only
  // Diagonal segment 1/r in (lo, hi], present when nonempty.
  std::optional<std::pair<Rat, Rat>> diagonal_segment;
};

RegionPolygon region_polygon(const Rat& gamma, const Rat& gamma_t);

// Exact membership test used both by the polygon construction and by the
// grid oracle: does some 1/q make the full configuration admissible?
// closure = true relaxes every strict inequality to non-strict.
bool region_contains(const Rat& inv_r, const Rat& inv_rt, const Rat& gamma,
                     const Rat& gamma_t, bool closure);

// --- Appendix interpolation closure --------------------------------------

struct InterpViolation {
  std::string family;     // "abd" or "ace"
  std::string condition;  // failing inequality
  Rat theta;
  ExponentConfig point;   // inv_q/inv_r fields reused for 1/a, 1/b
};

struct InterpReport {
  long points_checked = 0;
  std::vector<InterpViolation> violations;
};

struct InterpOptions {
  Rat eps = Rat(1, 100);  // the "sufficiently small" endpoint epsilon
  int endpoint_samples = 50;
  unsigned long seed = 0x5eed;
};

InterpReport appendix_interp_verify(const std::vector<Rat>& theta_samples,
                                    const InterpOptions& opts = {});

// Membership in the time-localized estimate's condition set (the bilinear
// building block): reciprocals (1/a, 1/b, 1/at, 1/bt) with weights.
Membership localized_conditions(const Rat& inv_a, const Rat& inv_b,
                                const Rat& inv_at, const Rat& inv_bt,
                                const Rat& gamma, const Rat& gamma_t);

}  // namespace wsl
