#pragma once

#include <complex>
#include <vector>

namespace wsl {

// In-place 3D DFT on an n^3 cube, sign = -1 forward / +1 backward (unscaled,
// FFTW convention). Thread-safe via an internal plan cache lock.
void fft3(std::vector<std::complex<double>>& data, int n, int sign);

}  // namespace wsl
