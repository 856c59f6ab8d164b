#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wsl {

// Exact rational scalar. All exponent arithmetic in the library is done on
// these; doubles appear only at the quadrature/fitting layer.
using Rat = mpq_class;

inline Rat frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q" or "p". Whitespace is not accepted.
inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational: '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace wsl
