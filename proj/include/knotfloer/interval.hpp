#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "knotfloer/rational.hpp"

namespace knotfloer {

// Closed interval [lo, hi] with outward-rounded mpfr endpoints. All operations
// round lo down and hi up, so the true value is always enclosed.
class RealInterval {
 public:
  explicit RealInterval(mpfr_prec_t prec = 64) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }
  RealInterval(const RealInterval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  RealInterval& operator=(RealInterval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }
  ~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static RealInterval from_rational(const Rational& q, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }
  static RealInterval from_long(long v, mpfr_prec_t prec) {
    RealInterval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
  }
  static RealInterval hull(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec_, b.prec_));
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  mpfr_prec_t prec() const { return prec_; }
  bool contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
  }
  bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
  // True if this interval lies strictly below the other.
  bool strictly_below(const RealInterval& o) const {
    return mpfr_cmp(hi_, o.lo_) < 0;
  }
  int certified_sign() const {
    if (strictly_positive()) return 1;
    if (strictly_negative()) return -1;
    return 0;  // undecided
  }
  double width() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }
  double mid_d() const {
    return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2;
  }

  // Exact dyadic endpoints as rationals (mpfr values are dyadic).
  Rational lo_rational() const { return mpfr_to_rational(lo_); }
  Rational hi_rational() const { return mpfr_to_rational(hi_); }

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }
  friend RealInterval operator-(const RealInterval& a) {
    RealInterval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    RealInterval r(std::max(a.prec_, b.prec_));
    mpfr_t p;
    mpfr_init2(p, r.prec_);
    bool first = true;
    const mpfr_srcptr as[2] = {a.lo_, a.hi_};
    const mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    for (auto x : as)
      for (auto y : bs) {
        mpfr_mul(p, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(p, r.lo_) < 0) mpfr_set(r.lo_, p, MPFR_RNDD);
        mpfr_mul(p, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(p, r.hi_) > 0) mpfr_set(r.hi_, p, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(p);
    return r;
  }

  RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }

  std::string str() const {
    char* s1 = nullptr;
    char* s2 = nullptr;
    mpfr_asprintf(&s1, "%.8Rg", lo_);
    mpfr_asprintf(&s2, "%.8Rg", hi_);
    std::string out = std::string("[") + s1 + ", " + s2 + "]";
    mpfr_free_str(s1);
    mpfr_free_str(s2);
    return out;
  }

  // cos(pi*u) for exact rational u; Lipschitz-1 widening absorbs the argument
  // rounding error.
  static RealInterval cos_pi(const Rational& u, mpfr_prec_t prec) {
    return trig_pi(u, prec, /*sine=*/false);
  }
  static RealInterval sin_pi(const Rational& u, mpfr_prec_t prec) {
    return trig_pi(u, prec, /*sine=*/true);
  }

  // Range of cos(pi*u) for u in [u1, u2] subset [0, 1]: monotone decreasing.
  static RealInterval cos_pi_range(const Rational& u1, const Rational& u2,
                                   mpfr_prec_t prec) {
    RealInterval a = cos_pi(u1, prec), b = cos_pi(u2, prec);
    return hull(a, b);
  }
  // Range of sin(pi*u) for u in [u1, u2] subset [0, 1]: unimodal, max at 1/2.
  static RealInterval sin_pi_range(const Rational& u1, const Rational& u2,
                                   mpfr_prec_t prec) {
    RealInterval r = hull(sin_pi(u1, prec), sin_pi(u2, prec));
    Rational half(1, 2);
    if (u1 <= half && half <= u2) {
      RealInterval one = from_long(1, prec);
      r = hull(r, one);
    }
    return r;
  }

 private:
  static Rational mpfr_to_rational(mpfr_srcptr v) {
    if (mpfr_zero_p(v)) return Rational(0);
    mpz_class m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
    Rational q(m);
    if (e >= 0) {
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(e));
      q *= Rational(p2);
    } else {
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(-e));
      q /= Rational(p2);
    }
    q.canonicalize();
    return q;
  }

  static RealInterval trig_pi(const Rational& u, mpfr_prec_t prec, bool sine) {
    RealInterval r(prec);
    mpfr_t pi, theta, val, err;
    mpfr_init2(pi, prec + 8);
    mpfr_init2(theta, prec + 8);
    mpfr_init2(val, prec + 8);
    mpfr_init2(err, prec + 8);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_mul_q(theta, pi, u.get_mpq_t(), MPFR_RNDN);
    // |theta_true - theta| <= 2 ulp of theta; widen by that after the trig call.
    if (sine) mpfr_sin(val, theta, MPFR_RNDN);
    else mpfr_cos(val, theta, MPFR_RNDN);
    mpfr_set_ui_2exp(err, 1, -(prec - 2), MPFR_RNDU);
    mpfr_t scale;
    mpfr_init2(scale, prec + 8);
    mpfr_abs(scale, theta, MPFR_RNDU);
    mpfr_add_ui(scale, scale, 1, MPFR_RNDU);
    mpfr_mul(err, err, scale, MPFR_RNDU);
    mpfr_sub(r.lo_, val, err, MPFR_RNDD);
    mpfr_add(r.hi_, val, err, MPFR_RNDU);
    mpfr_clear(scale);
    mpfr_clear(pi);
    mpfr_clear(theta);
    mpfr_clear(val);
    mpfr_clear(err);
    return r;
  }

  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

// Value together with its derivative, both interval-enclosed. Product and sum
// follow the usual rules; enough for trace functions along representation arcs.
struct DualInterval {
  RealInterval val, der;

  DualInterval() = default;
  DualInterval(RealInterval v, RealInterval d)
      : val(std::move(v)), der(std::move(d)) {}

  static DualInterval constant(RealInterval v, mpfr_prec_t prec) {
    return DualInterval(std::move(v), RealInterval(prec));
  }

  friend DualInterval operator+(const DualInterval& a, const DualInterval& b) {
    return DualInterval(a.val + b.val, a.der + b.der);
  }
  friend DualInterval operator-(const DualInterval& a, const DualInterval& b) {
    return DualInterval(a.val - b.val, a.der - b.der);
  }
  friend DualInterval operator-(const DualInterval& a) {
    return DualInterval(-a.val, -a.der);
  }
  friend DualInterval operator*(const DualInterval& a, const DualInterval& b) {
    return DualInterval(a.val * b.val, a.der * b.val + a.val * b.der);
  }
};

}  // namespace knotfloer
