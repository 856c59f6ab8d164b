#include "wsl/whitney.hpp"

#include <stdexcept>

namespace wsl {

namespace {

Rat pow2(int j) {
  if (j >= 0) {
    Rat r(1);
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), j);
    return r;
  }
  Rat r(1);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -j);
  return r;
}

}  // namespace

Rat WhitneySquare::side() const { return pow2(j); }
Rat WhitneySquare::s_lo() const { return m * side(); }
Rat WhitneySquare::s_hi() const { return (m + 1) * side(); }
Rat WhitneySquare::t_lo() const { return k * side(); }
Rat WhitneySquare::t_hi() const { return (k + 1) * side(); }
Rat WhitneySquare::dist() const { return (k - m - 1) * side(); }

std::vector<WhitneySquare> whitney_decompose(int j_min, int j_max,
                                             const Rat& time_bound) {
  if (j_min > j_max) throw std::invalid_argument("j_min > j_max");
  if (!(time_bound > 0)) throw std::invalid_argument("time_bound must be > 0");

  std::vector<WhitneySquare> out;
  for (int j = j_max; j >= j_min; --j) {
    // Number of whole cells of side 2^j inside [0, time_bound].
    Rat cells = time_bound / pow2(j);
    mpz_class n_z;
    mpz_fdiv_q(n_z.get_mpz_t(), cells.get_num_mpz_t(), cells.get_den_mpz_t());
    if (!n_z.fits_slong_p())
      throw std::invalid_argument("decomposition too large at this scale");
    std::int64_t n = n_z.get_si();
    for (std::int64_t m = 0; m + 2 < n; ++m) {
      // Selected squares have k - m = 2, plus k - m = 3 for even m; this is
      // exactly "k - m >= 2 and the dyadic parent has k' - m' <= 1".
      out.push_back(WhitneySquare{j, m, m + 2});
      if (m % 2 == 0 && m + 3 < n) out.push_back(WhitneySquare{j, m, m + 3});
    }
  }
  return out;
}

Rat whitney_covered_measure(const std::vector<WhitneySquare>& squares) {
  Rat total(0);
  for (const auto& sq : squares) total += sq.side() * sq.side();
  return total;
}

}  // namespace wsl
