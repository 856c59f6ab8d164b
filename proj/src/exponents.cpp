#include "wsl/exponents.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>

namespace wsl {

namespace {

const Rat kZero(0);
const Rat kOne(1);
const Rat kHalf = frac(1, 2);
const Rat kThird = frac(1, 3);

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

void require_sane_reciprocals(const Rat& inv_q, const Rat& inv_r) {
  if (inv_q < 0 || inv_r < 0)
    throw std::invalid_argument("negative exponent reciprocal");
}

}  // namespace

AdMembership ad_membership(const Rat& inv_q, const Rat& inv_r, const Rat& gamma,
                           const Rat& sigma) {
  require_sane_reciprocals(inv_q, inv_r);
  if (gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (!(sigma > frac(-1, 2) && sigma < frac(3, 2)))
    throw std::invalid_argument("sigma outside (-1/2, 3/2)");

  std::vector<ConditionReport> cs;
  cs.push_back(check("q_window_lower", kZero, Relation::LessEqual, inv_q));
  cs.push_back(check("q_window_upper", inv_q, Relation::LessEqual, kHalf));
  cs.push_back(check("r_lower", gamma / 3, Relation::LessThan, inv_r));
  cs.push_back(check("r_upper", inv_r, Relation::LessEqual, kHalf));
  cs.push_back(check("q_vs_r", inv_q, Relation::LessThan,
                     frac(3, 2) * (kHalf - inv_r) + gamma));
  cs.push_back(check("sigma_identity", sigma, Relation::Equal,
                     3 * (kHalf - inv_r) - 2 * inv_q + gamma));

  AdMembership out;
  out.full = classify(std::move(cs));
  if (sigma == 0) {
    std::vector<ConditionReport> rs;
    rs.push_back(check("reduced_r_lower", frac(1, 6) + gamma / 3,
                       Relation::LessEqual, inv_r));
    rs.push_back(check("reduced_r_upper", inv_r, Relation::LessEqual, kHalf));
    rs.push_back(check("reduced_scaling", 2 * inv_q, Relation::Equal,
                       3 * (kHalf - inv_r) + gamma));
    out.reduced = classify(std::move(rs));
  }
  return out;
}

Membership ac_membership(const Rat& inv_q, const Rat& inv_r, const Rat& gamma,
                         const Rat& sigma) {
  require_sane_reciprocals(inv_q, inv_r);
  if (!(gamma > 0 && gamma < 1))
    throw std::invalid_argument("gamma outside (0, 1)");
  if (!(sigma > frac(-1, 2) && sigma < frac(1, 2)))
    throw std::invalid_argument("sigma outside (-1/2, 1/2)");

  std::vector<ConditionReport> cs;
  cs.push_back(check("acad_q_lower", kZero, Relation::LessEqual, inv_q));
  cs.push_back(check("acad_q_upper", inv_q, Relation::LessEqual, kOne));
  cs.push_back(check("acad_r_lower", gamma / 3, Relation::LessThan, inv_r));
  cs.push_back(
      check("acad_r_upper", inv_r, Relation::LessThan, kHalf + gamma / 3));
  cs.push_back(check("acad_q_vs_r", inv_q, Relation::LessThan,
                     3 * (kHalf - inv_r) + gamma));
  cs.push_back(check("(sc_1)", 2 * inv_q, Relation::Equal,
                     3 * (kHalf - inv_r) + gamma - sigma));
  return classify(std::move(cs));
}

InhomAdmissibility inhomogeneous_admissible(const ExponentConfig& cfg) {
  if (cfg.dim != 3)
    throw std::invalid_argument(
        "inhomogeneous admissibility branches are stated for dimension 3");
  require_sane_reciprocals(cfg.inv_q, cfg.inv_r);
  require_sane_reciprocals(cfg.inv_qt, cfg.inv_rt);

  const Rat& g = cfg.gamma;
  const Rat& gt = cfg.gamma_t;
  // Solve the scaling equality of each pair for its smoothing index.
  Rat sigma = 3 * (kHalf - cfg.inv_r) + g - 2 * cfg.inv_q;
  Rat sigma_t = 3 * (kHalf - cfg.inv_rt) + gt - 2 * cfg.inv_qt;

  InhomAdmissibility out;
  out.sigma = sigma;
  out.sigma_gap = sigma + sigma_t;

  std::vector<ConditionReport> cs;
  cs.push_back(check("gamma_range_lower", kZero, Relation::LessThan, g));
  cs.push_back(check("gamma_range_upper", g, Relation::LessThan, kOne));
  cs.push_back(check("gammat_range_lower", kZero, Relation::LessThan, gt));
  cs.push_back(check("gammat_range_upper", gt, Relation::LessThan, kOne));
  // The two scaling equalities have a common sigma iff the sharp scaling
  // identity holds.
  cs.push_back(check("(sc)", out.sigma_gap, Relation::Equal, kZero));
  cs.push_back(
      check("sigma_range", rat_abs(sigma), Relation::LessThan, kHalf));

  cs.push_back(check("acad_q_lower", kZero, Relation::LessEqual, cfg.inv_q));
  cs.push_back(check("acad_q_upper", cfg.inv_q, Relation::LessEqual, kOne));
  cs.push_back(check("acad_r_lower", g / 3, Relation::LessThan, cfg.inv_r));
  cs.push_back(
      check("acad_r_upper", cfg.inv_r, Relation::LessThan, kHalf + g / 3));
  cs.push_back(check("acad_q_vs_r", cfg.inv_q, Relation::LessThan,
                     3 * (kHalf - cfg.inv_r) + g));
  cs.push_back(check("acad_qt_lower", kZero, Relation::LessEqual, cfg.inv_qt));
  cs.push_back(check("acad_qt_upper", cfg.inv_qt, Relation::LessEqual, kOne));
  cs.push_back(check("acad_rt_lower", gt / 3, Relation::LessThan, cfg.inv_rt));
  cs.push_back(
      check("acad_rt_upper", cfg.inv_rt, Relation::LessThan, kHalf + gt / 3));
  cs.push_back(check("acad_qt_vs_rt", cfg.inv_qt, Relation::LessThan,
                     3 * (kHalf - cfg.inv_rt) + gt));

  Rat u = cfg.inv_r - g / 3;
  Rat v = cfg.inv_rt - gt / 3;
  cs.push_back(check("(main_cond_1)_time", cfg.inv_q + cfg.inv_qt,
                     Relation::LessThan, kOne));
  cs.push_back(
      check("(main_cond_1)_gap", rat_abs(v - u), Relation::LessThan, kThird));

  Rat gsum = g + gt;
  if (u == v) {
    out.branch = InhomBranch::Diagonal;
    cs.push_back(check("(main_cond_11)_lower", frac(1, 6) + g / 3,
                       Relation::LessThan, cfg.inv_r));
    cs.push_back(check("(main_cond_11)_upper", cfg.inv_r, Relation::LessEqual,
                       kHalf - (gt - g) / 6));
  } else if (u < v) {
    out.branch = InhomBranch::Upper;
    // (gamma+gammat) u + (2-gamma-gammat) v <= (3-gamma-gammat)/3
    cs.push_back(check("(main_cond_21)", gsum * u + (2 - gsum) * v,
                       Relation::LessEqual, (3 - gsum) / 3));
    cs.push_back(check("(main_cond_22)", cfg.inv_q, Relation::LessThan,
                       frac(3, 2) + 3 * u - 3 * v));
    cs.push_back(check("(main_cond_22)_gammat", gt, Relation::LessThan, kHalf));
  } else {
    out.branch = InhomBranch::Lower;
    cs.push_back(check("(main_cond_31)", gsum * v + (2 - gsum) * u,
                       Relation::LessEqual, (3 - gsum) / 3));
    cs.push_back(check("(main_cond_32)", cfg.inv_qt, Relation::LessThan,
                       frac(3, 2) + 3 * v - 3 * u));
    cs.push_back(check("(main_cond_32)_gamma", g, Relation::LessThan, kHalf));
  }

  out.membership = classify(std::move(cs));
  return out;
}

Membership necessary_conditions(const ExponentConfig& cfg) {
  if (cfg.dim < 3)
    throw std::invalid_argument("necessary conditions require dimension >= 3");
  require_sane_reciprocals(cfg.inv_q, cfg.inv_r);
  require_sane_reciprocals(cfg.inv_qt, cfg.inv_rt);

  const Rat n(cfg.dim);
  const Rat& g = cfg.gamma;
  const Rat& gt = cfg.gamma_t;

  std::vector<ConditionReport> cs;
  cs.push_back(check("(n0)", cfg.inv_q + cfg.inv_qt, Relation::Equal,
                     n / 2 * (kOne - cfg.inv_r - cfg.inv_rt) + (g + gt) / 2));
  cs.push_back(check("(n1)_r_lower", g / n, Relation::LessThan, cfg.inv_r));
  cs.push_back(
      check("(n1)_r_upper", cfg.inv_r, Relation::LessThan, kHalf + g / n));
  cs.push_back(check("(n1)_rt_lower", gt / n, Relation::LessThan, cfg.inv_rt));
  cs.push_back(
      check("(n1)_rt_upper", cfg.inv_rt, Relation::LessThan, kHalf + gt / n));
  cs.push_back(check("(n1)_time", cfg.inv_q + cfg.inv_qt, Relation::LessEqual,
                     kOne));
  cs.push_back(check("(n2)", cfg.inv_q, Relation::LessThan,
                     n * (kHalf - cfg.inv_r) + g));
  cs.push_back(check("(n2)_tilde", cfg.inv_qt, Relation::LessThan,
                     n * (kHalf - cfg.inv_rt) + gt));
  Rat gap = (cfg.inv_r - g / n) - (cfg.inv_rt - gt / n);
  cs.push_back(check("(n5)", rat_abs(gap), Relation::LessEqual, kOne / n));
  return classify(std::move(cs));
}

Rat beta_exponent(const Rat& inv_a, const Rat& inv_b, const Rat& inv_at,
                  const Rat& inv_bt, const Rat& gamma, const Rat& gamma_t) {
  return -(inv_a + inv_at) + frac(3, 2) * (kOne - inv_b - inv_bt) +
         (gamma + gamma_t) / 2;
}

Perturbation perturb_exponents(const ExponentConfig& cfg, const Rat& eps0) {
  if (eps0 < 0) throw std::invalid_argument("eps0 must be >= 0");
  Rat q0 = cfg.inv_q - eps0;
  Rat q1 = cfg.inv_q + 2 * eps0;
  Rat qt0 = cfg.inv_qt - eps0;
  Rat qt1 = cfg.inv_qt + 2 * eps0;
  for (const Rat* x : {&q0, &q1, &qt0, &qt1})
    if (*x < 0 || *x > 1)
      throw std::invalid_argument(
          "perturbation pushes a reciprocal outside [0, 1]");

  auto make = [&](const Rat& iq, const Rat& iqt) {
    PerturbedConfig p;
    p.cfg = cfg;
    p.cfg.inv_q = iq;
    p.cfg.inv_qt = iqt;
    p.beta = beta_exponent(iq, cfg.inv_r, iqt, cfg.inv_rt, cfg.gamma,
                           cfg.gamma_t);
    return p;
  };
  return Perturbation{make(q0, qt0), make(q0, qt1), make(q1, qt0)};
}

WPExponents wellposedness_exponents(const Rat& alpha, const Rat& delta,
                                    const Rat& gamma0, const Rat& gammat0) {
  if (!(alpha >= frac(3, 2) && alpha < frac(11, 6)))
    throw std::invalid_argument("alpha outside [3/2, 11/6)");
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");

  WPExponents wp;
  wp.alpha = alpha;
  wp.delta = delta;
  wp.beta = 4 - 2 * alpha;
  wp.gamma0 = gamma0;
  wp.gammat0 = gammat0;
  const Rat k = 3 * wp.beta + 5;  // = 17 - 6 alpha
  const Rat bp1 = wp.beta + 1;    // = 5 - 2 alpha

  // (c1)
  if (!(gamma0 > 0 && gamma0 < kHalf && gamma0 < 3 / k))
    throw std::invalid_argument(
        "(c1) violated: need 0 < gamma0 < min{1/2, 3/(3beta+5)}");
  if (!(gammat0 > 0 && gammat0 < 1))
    throw std::invalid_argument("(c1) violated: need 0 < gammat0 < 1");
  // (c5)
  if (!(-gamma0 * bp1 - wp.beta + alpha <= gammat0 &&
        gammat0 <= -gamma0 * bp1 + alpha))
    throw std::invalid_argument("(c5) violated: gammat0 outside its sandwich");

  wp.inv_q0 = 3 / (2 * k) + 3 * delta / 2;
  wp.inv_r0 = kHalf - 1 / k + gamma0 / 3 - delta;
  wp.inv_qt0 = kHalf + 1 / k - 3 * delta * bp1 / 2;
  wp.inv_rt0 = frac(1, 6) - 2 / (3 * k) + gammat0 / 3 + delta * bp1;

  auto ad = ad_membership(wp.inv_q0, wp.inv_r0, gamma0, kZero);
  if (!ad.full.is_member() || !ad.reduced->is_member())
    throw std::invalid_argument(
        "(q0, r0) not admissible in the homogeneous class (delta too large?)");
  auto ac = ac_membership(wp.inv_qt0, wp.inv_rt0, gammat0, kZero);
  if (!ac.is_member())
    throw std::invalid_argument(
        "(qt0, rt0) not admissible in the extended class (delta too large?)");

  ExponentConfig cfg{wp.inv_q0,  wp.inv_r0, wp.inv_qt0, wp.inv_rt0,
                     gamma0,     gammat0,   kZero,      3};
  auto inhom = inhomogeneous_admissible(cfg);
  if (!inhom.membership.is_member())
    throw std::invalid_argument(
        "derived exponents fail the inhomogeneous admissibility check");
  return wp;
}

std::optional<WPExponents> wellposedness_search(const Rat& alpha) {
  const Rat beta = 4 - 2 * alpha;
  const Rat k = 3 * beta + 5;
  const Rat bp1 = beta + 1;
  Rat g0_hi = std::min(kHalf, Rat(3 / k));
  // (c6) lower bound for gamma0 so that the gammat0 sandwich meets (0, 1).
  Rat g0_lo = std::max(kZero, Rat(-1 + alpha / bp1));

  for (long dd : {100L, 300L, 1000L, 3000L}) {
    Rat delta = frac(1, dd);
    for (int i = 1; i < 16; ++i) {
      Rat g0 = g0_lo + (g0_hi - g0_lo) * i / 16;
      Rat lo = std::max(Rat(-g0 * bp1 - beta + alpha), kZero);
      Rat hi = std::min(Rat(-g0 * bp1 + alpha), kOne);
      if (!(lo < hi)) continue;
      Rat gt0 = (lo + hi) / 2;
      if (!(gt0 > 0 && gt0 < 1)) continue;
      try {
        return wellposedness_exponents(alpha, delta, g0, gt0);
      } catch (const std::invalid_argument&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Feasible region in the (1/r, 1/rt) plane.
// ---------------------------------------------------------------------------

namespace {

// Linear constraint a*ir + b*irt + c*x + d >= 0 (> 0 when strict), where
// x = 1/q and 1/qt has been substituted by S - x with
// S = (3/2)(1 - ir - irt) + (gamma + gammat)/2.
struct Lin3 {
  std::string name;
  Rat a, b, c, d;
  bool strict;
};

struct Lin2 {
  std::string name;
  Rat a, b, d;  // a*ir + b*irt + d >= 0 (or > 0)
  bool strict;
};

// Branch side selector.
enum class Side { Upper, Lower };

// S as an affine function of (ir, irt): S = s_a*ir + s_b*irt + s_d.
struct Affine {
  Rat a, b, d;
};

std::vector<Lin3> branch_system(const Rat& g, const Rat& gt, Side side) {
  const Rat th = frac(3, 2);
  Affine S{-th, -th, th + (g + gt) / 2};
  std::vector<Lin3> out;
  auto add = [&](std::string name, Rat a, Rat b, Rat c, Rat d, bool strict) {
    out.push_back(Lin3{std::move(name), std::move(a), std::move(b),
                       std::move(c), std::move(d), strict});
  };
  // Pure (ir, irt) conditions.
  add("acad_r_lower", 1, 0, 0, -g / 3, true);          // ir > g/3
  add("acad_r_upper", -1, 0, 0, kHalf + g / 3, true);  // ir < 1/2 + g/3
  add("acad_rt_lower", 0, 1, 0, -gt / 3, true);
  add("acad_rt_upper", 0, -1, 0, kHalf + gt / 3, true);
  // 1/q + 1/qt < 1  <=>  S < 1.
  add("(main_cond_1)_time", -S.a, -S.b, 0, 1 - S.d, true);
  // |(irt - gt/3) - (ir - g/3)| < 1/3.
  add("(main_cond_1)_gap_hi", 1, -1, 0, kThird + gt / 3 - g / 3, true);
  add("(main_cond_1)_gap_lo", -1, 1, 0, kThird + g / 3 - gt / 3, true);
  // 0 <= x <= 1, 0 <= S - x <= 1.
  add("q_nonneg", 0, 0, 1, 0, false);
  add("q_le_one", 0, 0, -1, 1, false);
  add("qt_nonneg", S.a, S.b, -1, S.d, false);
  add("qt_le_one", -S.a, -S.b, 1, 1 - S.d, false);
  // x < 3(1/2 - ir) + g  and  S - x < 3(1/2 - irt) + gt.
  add("acad_q_vs_r", -3, 0, -1, th + g, true);
  add("acad_qt_vs_rt", -S.a, 3 - S.b, 1, th + gt - S.d, true);
  // -1/2 < sigma < 1/2 with sigma = 3(1/2 - ir) + g - 2x.
  add("sigma_upper", -3, 0, -2, 2 + g, true);   // sigma > -1/2 <=> ... wait
  add("sigma_lower", 3, 0, 2, -1 - g, true);
  // Branch conditions.
  const Rat gsum = g + gt;
  // u = ir - g/3, v = irt - gt/3.
  if (side == Side::Upper) {
    // u <= v (closure of the branch side).
    add("diagonal_side", -1, 1, 0, g / 3 - gt / 3, false);
    // gsum*u + (2-gsum)*v <= (3-gsum)/3.
    add("(main_cond_21)", -gsum, -(2 - gsum), 0,
        (3 - gsum) / 3 - gsum * (-g / 3) - (2 - gsum) * (-gt / 3), false);
    // x < 3/2 + 3u - 3v.
    add("(main_cond_22)", 3, -3, -1, th - g + gt, true);
  } else {
    add("diagonal_side", 1, -1, 0, gt / 3 - g / 3, false);
    add("(main_cond_31)", -(2 - gsum), -gsum, 0,
        (3 - gsum) / 3 - (2 - gsum) * (-g / 3) - gsum * (-gt / 3), false);
    // S - x < 3/2 + 3v - 3u.
    add("(main_cond_32)", -S.a - 3, 3 - S.b, 1, th + gt - g - S.d, true);
  }
  return out;
}

// Fourier-Motzkin elimination of x.
std::vector<Lin2> eliminate_x(const std::vector<Lin3>& sys) {
  std::vector<Lin2> out;
  std::vector<const Lin3*> lowers, uppers;
  for (const auto& c : sys) {
    if (c.c == 0)
      out.push_back(Lin2{c.name, c.a, c.b, c.d, c.strict});
    else if (c.c > 0)
      lowers.push_back(&c);  // x >= -(a ir + b irt + d)/c
    else
      uppers.push_back(&c);
  }
  for (const auto* lo : lowers)
    for (const auto* up : uppers) {
      // lo: a1 ir + b1 irt + c1 x + d1 >= 0, c1 > 0
      // up: a2 ir + b2 irt + c2 x + d2 >= 0, c2 < 0
      // combine: c1*up - c2*lo scaled positive:
      Rat a = lo->a * (-up->c) + up->a * lo->c;
      Rat b = lo->b * (-up->c) + up->b * lo->c;
      Rat d = lo->d * (-up->c) + up->d * lo->c;
      out.push_back(
          Lin2{lo->name + "&" + up->name, a, b, d, lo->strict || up->strict});
    }
  return out;
}

bool satisfies(const Lin2& c, const Rat& ir, const Rat& irt, bool closure) {
  Rat v = c.a * ir + c.b * irt + c.d;
  if (c.strict && !closure) return v > 0;
  return v >= 0;
}

bool branch_contains(const std::vector<Lin2>& sys, const Rat& ir,
                     const Rat& irt, bool closure) {
  for (const auto& c : sys)
    if (!satisfies(c, ir, irt, closure)) return false;
  return true;
}

struct Pt {
  Rat x, y;
  bool operator<(const Pt& o) const {
    return x < o.x || (x == o.x && y < o.y);
  }
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

Rat cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;  // counter-clockwise
}

}  // namespace

bool region_contains(const Rat& inv_r, const Rat& inv_rt, const Rat& gamma,
                     const Rat& gamma_t, bool closure) {
  if (!(gamma > 0 && gamma < 1 && gamma_t > 0 && gamma_t < 1)) return false;
  // Strict membership: find a witness x and run the full check; the
  // diagonal branch is reached through the exact u == v case.
  for (Side side : {Side::Upper, Side::Lower}) {
    auto sys = branch_system(gamma, gamma_t, side);
    // Side conditions that do not involve x.
    bool ok2 = true;
    Rat lo(0), hi(1);
    bool lo_strict = false, hi_strict = false;
    bool infeasible = false;
    for (const auto& c : sys) {
      Rat rest = c.a * inv_r + c.b * inv_rt + c.d;
      if (c.c == 0) {
        bool sat = closure ? (rest >= 0) : (c.strict ? rest > 0 : rest >= 0);
        if (!sat) {
          ok2 = false;
          break;
        }
      } else if (c.c > 0) {  // x >= -rest/c
        Rat bound = -rest / c.c;
        if (bound > lo || (bound == lo && c.strict)) {
          lo = bound;
          lo_strict = c.strict && !closure;
        }
      } else {  // x <= rest/(-c)
        Rat bound = rest / (-c.c);
        if (bound < hi || (bound == hi && c.strict)) {
          hi = bound;
          hi_strict = c.strict && !closure;
        }
      }
    }
    if (!ok2 || infeasible) continue;
    if (lo < hi) return true;
    if (lo == hi && !lo_strict && !hi_strict) return true;
  }
  return false;
}

RegionPolygon region_polygon(const Rat& gamma, const Rat& gamma_t) {
  if (!(gamma > 0 && gamma < 1 && gamma_t > 0 && gamma_t < 1))
    throw std::invalid_argument("weights outside (0, 1)");

  RegionPolygon poly;
  // Collect candidate bounding lines from both branch systems.
  std::vector<Lin2> all;
  for (Side side : {Side::Upper, Side::Lower}) {
    auto two = eliminate_x(branch_system(gamma, gamma_t, side));
    all.insert(all.end(), two.begin(), two.end());
  }
  // Deduplicate by normalized direction (keep first name).
  std::vector<Lin2> lines;
  for (auto& c : all) {
    if (c.a == 0 && c.b == 0) continue;  // trivially true/false combination
    Rat scale = c.a != 0 ? rat_abs(c.a) : rat_abs(c.b);
    Lin2 n{c.name, c.a / scale, c.b / scale, c.d / scale, c.strict};
    bool dup = false;
    for (const auto& e : lines)
      if (e.a == n.a && e.b == n.b && e.d == n.d) {
        dup = true;
        break;
      }
    if (!dup) lines.push_back(std::move(n));
  }

  // Pairwise intersections, filtered by closure feasibility.
  std::vector<Pt> candidates;
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      Rat det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (det == 0) continue;
      Rat x = (-lines[i].d * lines[j].b + lines[j].d * lines[i].b) / det;
      Rat y = (-lines[i].a * lines[j].d + lines[j].a * lines[i].d) / det;
      if (region_contains(x, y, gamma, gamma_t, /*closure=*/true))
        candidates.push_back(Pt{x, y});
    }
  if (candidates.empty()) return poly;

  auto hull = convex_hull(std::move(candidates));
  if (hull.size() < 3) return poly;
  poly.empty = false;
  for (const auto& p : hull) {
    RegionVertex v;
    v.inv_r = p.x;
    v.inv_rt = p.y;
    for (const auto& l : lines)
      if (l.a * p.x + l.b * p.y + l.d == 0) v.on_lines.push_back(l.name);
    poly.vertices.push_back(std::move(v));
  }
  // Bounding lines: those containing a full hull edge.
  for (size_t i = 0; i < hull.size(); ++i) {
    const Pt& p = hull[i];
    const Pt& q = hull[(i + 1) % hull.size()];
    for (const auto& l : lines)
      if (l.a * p.x + l.b * p.y + l.d == 0 &&
          l.a * q.x + l.b * q.y + l.d == 0) {
        bool seen = false;
        for (const auto& e : poly.lines)
          if (e.a == -l.a && e.b == -l.b && e.c == l.d) seen = true;
        // Stored as a*(1/r) + b*(1/rt) <= c with the inward form flipped.
        if (!seen)
          poly.lines.push_back(RegionLine{l.name, -l.a, -l.b, l.d, l.strict});
        break;
      }
  }
  // Diagonal window from the diagonal-case condition.
  Rat lo = frac(1, 6) + gamma / 3;
  Rat hi = kHalf - (gamma_t - gamma) / 6;
  if (lo < hi) poly.diagonal_segment = std::make_pair(lo, hi);
  return poly;
}

// ---------------------------------------------------------------------------
// Time-localized condition set and the interpolation closure sweep.
// ---------------------------------------------------------------------------

Membership localized_conditions(const Rat& inv_a, const Rat& inv_b,
                                const Rat& inv_at, const Rat& inv_bt,
                                const Rat& gamma, const Rat& gamma_t) {
  std::vector<ConditionReport> cs;
  cs.push_back(check("a_range_lo", kZero, Relation::LessEqual, inv_a));
  cs.push_back(check("a_range_hi", inv_a, Relation::LessEqual, kOne));
  cs.push_back(check("at_range_lo", kZero, Relation::LessEqual, inv_at));
  cs.push_back(check("at_range_hi", inv_at, Relation::LessEqual, kOne));
  cs.push_back(check("(i00)_b", gamma / 3, Relation::LessThan, inv_b));
  cs.push_back(check("(i00)_bt", gamma_t / 3, Relation::LessThan, inv_bt));
  Rat u = inv_b - gamma / 3;
  Rat v = inv_bt - gamma_t / 3;
  cs.push_back(check("(i00)_gap", rat_abs(v - u), Relation::LessThan, kThird));
  const Rat gsum = gamma + gamma_t;
  if (u == v) {
    cs.push_back(check("(i01)", inv_b, Relation::LessEqual,
                       kHalf + (gamma - gamma_t) / 6));
  } else if (u < v) {
    cs.push_back(check("(i02)", gsum * u + (2 - gsum) * v, Relation::LessThan,
                       (3 - gsum) / 3));
    cs.push_back(
        check("(i03)_lo", frac(3, 2) * (v - u), Relation::LessEqual, inv_a));
    cs.push_back(check("(i03)_hi", inv_a, Relation::LessEqual, 1 - inv_at));
    cs.push_back(check("(i04)", frac(3, 2) * v - frac(9, 2) * u,
                       Relation::LessThan, inv_at));
    cs.push_back(
        check("(i04)_gammat", gamma_t, Relation::LessThan, kHalf));
  } else {
    cs.push_back(check("(i02')", gsum * v + (2 - gsum) * u, Relation::LessThan,
                       (3 - gsum) / 3));
    cs.push_back(
        check("(i03')_lo", frac(3, 2) * (u - v), Relation::LessEqual, inv_at));
    cs.push_back(check("(i03')_hi", inv_at, Relation::LessEqual, 1 - inv_a));
    cs.push_back(check("(i04')", frac(3, 2) * u - frac(9, 2) * v,
                       Relation::LessThan, inv_a));
    cs.push_back(check("(i04')_gamma", gamma, Relation::LessThan, kHalf));
  }
  return classify(std::move(cs));
}

namespace {

Rat random_rat(std::mt19937_64& rng, const Rat& lo, const Rat& hi, long den) {
  std::uniform_int_distribution<long> d(0, den);
  return lo + (hi - lo) * frac(d(rng), den);
}

struct Endpoint {
  Rat ia, ib, iat, ibt;
};

Endpoint lerp(const Endpoint& p, const Endpoint& q, const Rat& th) {
  return Endpoint{(1 - th) * p.ia + th * q.ia, (1 - th) * p.ib + th * q.ib,
                  (1 - th) * p.iat + th * q.iat, (1 - th) * p.ibt + th * q.ibt};
}

}  // namespace

InterpReport appendix_interp_verify(const std::vector<Rat>& theta_samples,
                                    const InterpOptions& opts) {
  InterpReport report;
  for (const auto& th : theta_samples)
    if (th < 0 || th > 1)
      throw std::invalid_argument("theta sample outside [0, 1]");
  std::mt19937_64 rng(opts.seed);
  const Rat& eps = opts.eps;

  auto run_family = [&](bool upper) {
    const char* fam = upper ? "abd" : "ace";
    for (int s = 0; s < opts.endpoint_samples; ++s) {
      Rat g = random_rat(rng, frac(1, 100), frac(49, 100), 97);
      Rat gt = random_rat(rng, frac(1, 100), frac(49, 100), 97);
      // Diagonal endpoint (case (a)).
      Rat u1 = random_rat(rng, frac(1, 100), kHalf - (g + gt) / 6, 89);
      Endpoint ea;
      ea.ib = u1 + g / 3;
      ea.ibt = u1 + gt / 3;
      ea.ia = random_rat(rng, kZero, kOne, 83);
      ea.iat = random_rat(rng, kZero, 1 - ea.ia, 83);
      // Extreme endpoint with 1/b or 1/bt beyond 1/2 (case (b) resp. (c)).
      Endpoint eb;
      if (upper) {
        eb.ib = frac(1, 6) + g / 3;
        eb.ibt = kHalf + (gt - eps) / 3;
        eb.ia = random_rat(rng, kHalf, kOne, 79);
        eb.iat = random_rat(rng, kZero, 1 - eb.ia, 79);
      } else {
        eb.ib = kHalf + (g - eps) / 3;
        eb.ibt = frac(1, 6) + gt / 3;
        eb.iat = random_rat(rng, kHalf, kOne, 79);
        eb.ia = random_rat(rng, kZero, 1 - eb.iat, 79);
      }
      // Low-integrability corner endpoint (case (d) resp. (e)).
      Endpoint ed;
      if (upper) {
        ed.ib = (g + eps) / 3;
        ed.ibt = (1 + gt) / 3;
      } else {
        ed.ib = (1 + g) / 3;
        ed.ibt = (gt + eps) / 3;
      }
      ed.ia = kHalf;
      ed.iat = kHalf;

      for (const auto& th : theta_samples) {
        Endpoint mid = lerp(ea, eb, th);
        auto m1 = localized_conditions(mid.ia, mid.ib, mid.iat, mid.ibt, g, gt);
        ++report.points_checked;
        if (!m1.is_member())
          report.violations.push_back(InterpViolation{
              fam, m1.violated.front(), th,
              ExponentConfig{mid.ia, mid.ib, mid.iat, mid.ibt, g, gt, kZero,
                             3}});
        // Second stage: pull toward the corner endpoint.
        Endpoint two = lerp(ed, mid, th);
        auto m2 = localized_conditions(two.ia, two.ib, two.iat, two.ibt, g, gt);
        ++report.points_checked;
        if (!m2.is_member())
          report.violations.push_back(InterpViolation{
              fam, m2.violated.front(), th,
              ExponentConfig{two.ia, two.ib, two.iat, two.ibt, g, gt, kZero,
                             3}});
      }
    }
  };
  run_family(true);
  run_family(false);
  return report;
}

}  // namespace wsl
