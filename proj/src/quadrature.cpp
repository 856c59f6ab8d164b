#include "wsl/quadrature.hpp"

#include <cmath>
#include <vector>

namespace wsl {

namespace {

using C = std::complex<double>;
using Fn = std::function<C(double)>;

struct Worker {
  const Fn& f;
  double tol;
  int max_depth;
  long evals = 0;
  double err_acc = 0;

  C simpson(double a, double b, C fa, C fm, C fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  C recurse(double a, double b, C fa, C fm, C fb, C whole, double tol_here,
            int depth) {
    double m = 0.5 * (a + b);
    C fl = f(0.5 * (a + m)), fr = f(0.5 * (m + b));
    evals += 2;
    C left = simpson(a, m, fa, fl, fm);
    C right = simpson(m, b, fm, fr, fb);
    C delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol_here) {
      err_acc += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth)
      throw QuadratureError("adaptive quadrature: depth cap hit (unresolved "
                            "oscillation or singularity)");
    return recurse(a, m, fa, fl, fm, left, 0.5 * tol_here, depth + 1) +
           recurse(m, b, fm, fr, fb, right, 0.5 * tol_here, depth + 1);
  }
};

}  // namespace

QuadResult integrate(const Fn& f, double a, double b, double tol,
                     int max_depth) {
  if (a == b) return {0.0, 0.0, 0};
  Worker w{f, tol, max_depth};
  C fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
  w.evals = 3;
  C whole = w.simpson(a, b, fa, fm, fb);
  C value = w.recurse(a, b, fa, fm, fb, whole, tol, 0);
  return {value, w.err_acc, w.evals};
}

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, double tol, int max_depth) {
  auto g = [&](double x) { return C(f(x), 0.0); };
  return integrate(g, a, b, tol, max_depth).value.real();
}

LineFit fit_line(const std::vector<double>& xs,
                 const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line needs >= 2 matched points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (size_t i = 0; i < xs.size(); ++i)
    fit.residual = std::max(
        fit.residual, std::abs(ys[i] - (fit.slope * xs[i] + fit.intercept)));
  return fit;
}

LineFit fit_loglog(const std::vector<double>& xs,
                   const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  lx.reserve(xs.size());
  ly.reserve(ys.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0) || !(ys[i] > 0))
      throw std::invalid_argument("fit_loglog: nonpositive sample");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace wsl
