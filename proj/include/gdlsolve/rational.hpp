#pragma once

#include <gmpxx.h>

#include <string>

namespace gdlsolve {

// Exact rational, always canonical. All probabilities in the solver stay in
// this representation; decimal rendering happens only at the CLI boundary.
using Rational = mpq_class;

inline Rational rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Renders value*100 with two decimals, round-half-even ("66.67" for 2/3).
std::string percent_string(const Rational& value);

// "p/q" (or "p" when q == 1).
std::string rational_string(const Rational& value);

struct RationalHash {
  size_t operator()(const Rational& r) const;
};

}  // namespace gdlsolve
