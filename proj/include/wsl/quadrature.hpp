#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

namespace wsl {

// Thrown when adaptive refinement hits its depth cap before meeting the
// tolerance (typically an unresolved oscillatory integrand).
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadResult {
  std::complex<double> value;
  double error = 0;  // a-posteriori estimate
  long evals = 0;
};

// Adaptive Simpson on [a, b] to absolute tolerance tol.
QuadResult integrate(const std::function<std::complex<double>(double)>& f,
                     double a, double b, double tol, int max_depth = 40);

double integrate_real(const std::function<double(double)>& f, double a,
                      double b, double tol, int max_depth = 40);

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // max |y - (slope*x + intercept)|
};

// Unweighted least squares.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Least squares of log|y| against log x; points with y <= 0 are rejected.
LineFit fit_loglog(const std::vector<double>& xs,
                   const std::vector<double>& ys);

}  // namespace wsl
