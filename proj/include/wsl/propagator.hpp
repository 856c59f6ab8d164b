#pragma once

#include <array>
#include <functional>

#include "wsl/fields.hpp"

namespace wsl {

// Exact free evolution of a Gaussian: width w -> w/(1+4iwt) with amplitude
// factor (1+4iwt)^{-3/2}.
Gaussian propagate_gaussian(const Gaussian& g, double t);

// Multiplies each Fourier mode by e^{-i t |xi|^2}; exactly unitary.
Field3D propagate_spectral(const Field3D& f, double t);

// Direct kernel quadrature (4 pi i t)^{-3/2} int e^{i|x-y|^2/(4t)} f(y) dy
// over the grid support of f. Throws QuadratureError when the phase variation
// per cell exceeds pi/4 anywhere (unresolved oscillation), std::domain_error
// for t = 0.
std::vector<Cplx> propagate_kernel(const Field3D& source, double t,
                                   const std::vector<std::array<double, 3>>& targets);

// int_0^t e^{i(t-s)Delta} F(s) ds by the midpoint rule in s (spectral route);
// the -i Duhamel prefactor is the caller's. Second order in 1/steps.
Field3D duhamel(const std::function<Field3D(double)>& forcing, double t,
                int steps);

}  // namespace wsl
