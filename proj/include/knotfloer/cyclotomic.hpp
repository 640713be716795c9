#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

#include "knotfloer/interval.hpp"
#include "knotfloer/poly.hpp"
#include "knotfloer/rational.hpp"

namespace knotfloer {

struct NotReal : std::domain_error {
  NotReal() : std::domain_error("sign_real: element is not real") {}
};

// Element of Q(zeta_N) as a polynomial in zeta_N reduced mod the N-th
// cyclotomic polynomial. The reduced coefficient vector is a canonical form,
// so equality and is_zero are exact coefficient comparisons.
class CyclotomicNumber {
 public:
  CyclotomicNumber() : order_(1), coeffs_() {}
  explicit CyclotomicNumber(long v) : order_(1) {
    if (v != 0) coeffs_ = {Rational(v)};
  }

  static CyclotomicNumber from_rational(const Rational& q) {
    CyclotomicNumber x;
    x.order_ = 1;
    if (q != 0) x.coeffs_ = {q};
    return x;
  }

  // zeta_N^k
  static CyclotomicNumber root(long n, long k) {
    if (n <= 0) throw std::invalid_argument("order must be positive");
    k %= n;
    if (k < 0) k += n;
    CyclotomicNumber x;
    x.order_ = n;
    std::vector<Rational> raw(n, Rational(0));
    raw[k] = 1;
    x.coeffs_ = reduce(raw, n);
    x.shrink();
    return x;
  }

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("not a rational value");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }

  bool operator==(const CyclotomicNumber& o) const {
    if (order_ == o.order_) return coeffs_ == o.coeffs_;
    long n = std::lcm(order_, o.order_);
    return lift(n).coeffs_ == o.lift(n).coeffs_;
  }
  bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

  CyclotomicNumber lift(long n) const {
    if (n == order_) return *this;
    if (n % order_ != 0) throw std::invalid_argument("lift: order must divide");
    long step = n / order_;
    std::vector<Rational> raw(static_cast<size_t>(n), Rational(0));
    for (size_t j = 0; j < coeffs_.size(); ++j) raw[j * step] = coeffs_[j];
    CyclotomicNumber x;
    x.order_ = n;
    x.coeffs_ = reduce(raw, n);
    return x;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a,
                                    const CyclotomicNumber& b) {
    long n = std::lcm(a.order_, b.order_);
    CyclotomicNumber x = a.lift(n), y = b.lift(n);
    if (x.coeffs_.size() < y.coeffs_.size()) x.coeffs_.resize(y.coeffs_.size());
    for (size_t i = 0; i < y.coeffs_.size(); ++i) x.coeffs_[i] += y.coeffs_[i];
    x.trim();
    x.shrink();
    return x;
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a,
                                    const CyclotomicNumber& b) {
    return a + (-b);
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a) {
    CyclotomicNumber x = a;
    for (auto& c : x.coeffs_) c = -c;
    return x;
  }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a,
                                    const CyclotomicNumber& b) {
    long n = std::lcm(a.order_, b.order_);
    CyclotomicNumber x = a.lift(n), y = b.lift(n);
    if (x.is_zero() || y.is_zero()) {
      CyclotomicNumber z;
      z.order_ = 1;
      return z;
    }
    std::vector<Rational> raw(x.coeffs_.size() + y.coeffs_.size() - 1,
                              Rational(0));
    for (size_t i = 0; i < x.coeffs_.size(); ++i) {
      if (x.coeffs_[i] == 0) continue;
      for (size_t j = 0; j < y.coeffs_.size(); ++j)
        raw[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    CyclotomicNumber z;
    z.order_ = n;
    z.coeffs_ = reduce(raw, n);
    z.shrink();
    return z;
  }
  friend CyclotomicNumber operator*(const Rational& s,
                                    const CyclotomicNumber& a) {
    if (s == 0) return CyclotomicNumber();
    CyclotomicNumber x = a;
    for (auto& c : x.coeffs_) c *= s;
    return x;
  }

  // Complex conjugation zeta -> zeta^{-1}; a ring homomorphism and an
  // involution on Q(zeta_N).
  CyclotomicNumber conj() const {
    std::vector<Rational> raw(static_cast<size_t>(order_), Rational(0));
    if (order_ == 1) return *this;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
      long e = (order_ - static_cast<long>(j)) % order_;
      raw[e] += coeffs_[j];
    }
    CyclotomicNumber x;
    x.order_ = order_;
    x.coeffs_ = reduce(raw, order_);
    x.shrink();
    return x;
  }

  bool is_real() const { return conj() == *this; }

  CyclotomicNumber inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    if (is_rational()) return from_rational(1 / coeffs_[0]);
    QPoly a{std::vector<Rational>(coeffs_)};
    const QPoly& phi = cyclotomic_poly(order_);
    auto [g, u, v] = ext_gcd(a, phi);
    if (g.degree() != 0) throw std::logic_error("non-invertible cyclotomic");
    // u*a = g mod phi, g is a nonzero constant after normalization (monic).
    CyclotomicNumber x;
    x.order_ = order_;
    std::vector<Rational> raw = u.c;
    raw.resize(std::max<size_t>(raw.size(), 1));
    x.coeffs_ = reduce(raw, order_);
    x.shrink();
    return x;
  }

  // Interval enclosure of the real part at precision prec. For real elements
  // this encloses the value itself.
  RealInterval real_enclosure(mpfr_prec_t prec) const {
    RealInterval sum(prec);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      // cos(2*pi*j/N) = cos(pi * (2j/N))
      Rational u(2 * static_cast<long>(j), order_);
      u.canonicalize();
      // reduce u mod 2 into [0, 2); use cos(pi*(2-u)) = cos(pi*u) for u > 1
      while (u >= 2) u -= 2;
      if (u > 1) u = 2 - u;
      RealInterval c = RealInterval::cos_pi(u, prec);
      sum += RealInterval::from_rational(coeffs_[j], prec) * c;
    }
    return sum;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  // Keep orders small when a value happens to be rational.
  void shrink() {
    trim();
    if (coeffs_.size() <= 1) order_ = 1;
  }

  static std::vector<Rational> reduce(std::vector<Rational> raw, long n) {
    const QPoly& phi = cyclotomic_poly(n);
    QPoly p{std::move(raw)};
    auto [q, r] = divrem(p, phi);
    (void)q;
    return r.c;
  }

  long order_;
  std::vector<Rational> coeffs_;  // reduced mod Phi_N, trailing zeros trimmed
};

// omega = e^{4*pi*i*alpha} as an exact root of unity, for alpha = c/d in
// [0, 1/2]. Its multiplicative order is the denominator of 2*alpha.
inline CyclotomicNumber root_of_unity(const Rational& alpha) {
  if (alpha < 0 || alpha > Rational(1, 2))
    throw std::invalid_argument("alpha must lie in [0, 1/2]");
  Rational two_alpha = 2 * alpha;
  two_alpha.canonicalize();
  long n = to_long(Integer(two_alpha.get_den()));
  long k = to_long(Integer(two_alpha.get_num()));
  return CyclotomicNumber::root(n, k);
}

// Exact sign of a real cyclotomic number: decide zero exactly first, then
// evaluate with outward-rounded intervals at doubling precision until the
// enclosure excludes zero. Terminates for every nonzero algebraic number.
inline int sign_real(const CyclotomicNumber& x) {
  if (!x.is_real()) throw NotReal();
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.rational_value());
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    RealInterval v = x.real_enclosure(prec);
    int s = v.certified_sign();
    if (s != 0) return s;
    if (prec > (1 << 20))
      throw std::logic_error("sign_real: precision runaway on nonzero input");
  }
}

}  // namespace knotfloer
