#pragma once

#include <cstdint>
#include <vector>

#include "wsl/rational.hpp"

namespace wsl {

// Dyadic square I x J of the decomposition of {0 <= s < t <= T}, side 2^j.
struct WhitneySquare {
  int j;              // scale, side length 2^j
  std::int64_t m, k;  // I = [m 2^j, (m+1) 2^j), J = [k 2^j, (k+1) 2^j)

  Rat side() const;
  Rat s_lo() const;
  Rat s_hi() const;
  Rat t_lo() const;
  Rat t_hi() const;
  // dist(I, J) = (k - m - 1) 2^j; always in {2^j, 2 * 2^j}.
  Rat dist() const;
};

// Whitney family truncated to the triangle {0 <= s < t <= time_bound} with
// scales restricted to [j_min, j_max]. A square at scale j is selected when
// k - m >= 2 and its dyadic parent has k' - m' <= 1; that forces
// k - m in {2, 3} and makes the selected squares pairwise disjoint.
std::vector<WhitneySquare> whitney_decompose(int j_min, int j_max,
                                             const Rat& time_bound);

// Total measure of the selected squares (exact).
Rat whitney_covered_measure(const std::vector<WhitneySquare>& squares);

}  // namespace wsl
