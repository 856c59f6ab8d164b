#include "wsl/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace wsl {

void fft3(std::vector<std::complex<double>>& data, int n, int sign) {
  if (data.size() != static_cast<size_t>(n) * n * n)
    throw std::invalid_argument("fft3: size mismatch");
  static std::mutex plan_mutex;
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_3d(n, n, n, ptr, ptr,
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(plan);
  }
}

}  // namespace wsl
