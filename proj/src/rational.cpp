#include "gdlsolve/rational.hpp"

#include <cstdio>

namespace gdlsolve {

std::string percent_string(const Rational& value) {
  // hundredths of a percent, rounded half to even
  Rational scaled = value * 10000;
  mpz_class num = scaled.get_num(), den = scaled.get_den();
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  mpz_class twice = 2 * r;
  int c = cmp(twice, den);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  bool neg = q < 0;
  if (neg) q = -q;
  mpz_class whole = q / 100, frac = q % 100;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%s.%02lu", neg ? "-" : "",
                whole.get_str().c_str(), frac.get_ui());
  return buf;
}

std::string rational_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

size_t RationalHash::operator()(const Rational& r) const {
  size_t h = mpz_get_ui(r.get_num().get_mpz_t());
  size_t d = mpz_get_ui(r.get_den().get_mpz_t());
  return h * 0x9e3779b97f4a7c15ULL ^ d;
}

}  // namespace gdlsolve
