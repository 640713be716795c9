#pragma once

#include <gmpxx.h>
#include <numeric>
#include <stdexcept>
#include <string>

namespace knotfloer {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "c/d" or "c" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// mpq_class(n, d) does not canonicalize; this does.
inline Rational make_q(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer too large");
  return z.get_si();
}

// Denominator of 2*alpha in lowest terms; the lambda-exponent lattice of the
// coefficient ring at holonomy parameter alpha is (1/D)*Z.
inline long exponent_denominator(const Rational& alpha) {
  Rational two_alpha = 2 * alpha;
  two_alpha.canonicalize();
  return to_long(Integer(two_alpha.get_den()));
}

inline long phi_euler(long n) {
  long result = n, m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace knotfloer
