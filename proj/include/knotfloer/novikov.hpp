#pragma once

#include <map>
#include <optional>
#include <sstream>

#include "knotfloer/function_field.hpp"
#include "knotfloer/rational.hpp"

namespace knotfloer {

struct AlphaMismatch : std::invalid_argument {
  AlphaMismatch() : std::invalid_argument("operands have different alpha") {}
};
struct NotAUnit : std::domain_error {
  using std::domain_error::domain_error;
};
struct Truncated : std::domain_error {
  Truncated() : std::domain_error("element carries unresolved series truncation") {}
};

// Finite sum  sum c_{r,j} lambda^r T^j  with r in (1/D) Z, D the denominator
// of 2*alpha. Series-producing operations (unit inversion) mark their result
// with the truncation depth they retained.
class NovikovElement {
 public:
  explicit NovikovElement(const Rational& alpha) : alpha_(alpha) {
    if (!(alpha > 0 && alpha < Rational(1, 2)))
      throw std::invalid_argument("alpha must lie in (0, 1/2)");
    d_ = exponent_denominator(alpha);
  }

  static NovikovElement zero(const Rational& alpha) { return NovikovElement(alpha); }
  static NovikovElement one(const Rational& alpha) {
    NovikovElement x(alpha);
    x.set_term(Rational(0), 0, Rational(1));
    return x;
  }
  // c * lambda^r * T^j
  static NovikovElement monomial(const Rational& alpha, const Rational& c,
                                 const Rational& r, long j) {
    NovikovElement x(alpha);
    x.set_term(r, j, c);
    return x;
  }

  const Rational& alpha() const { return alpha_; }
  long lattice_denominator() const { return d_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  std::optional<long> truncation_depth() const { return trunc_; }
  bool truncated() const { return trunc_.has_value(); }

  // terms keyed by (r*D, j); r = key.first / D
  const std::map<std::pair<long, long>, Rational>& terms() const { return terms_; }

  Rational coeff(const Rational& r, long j) const {
    auto key = make_key(r, j);
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void set_term(const Rational& r, long j, const Rational& c) {
    auto key = make_key(r, j);
    if (c == 0) terms_.erase(key);
    else terms_[key] = c;
  }

  bool operator==(const NovikovElement& o) const {
    return alpha_ == o.alpha_ && terms_ == o.terms_;
  }

  friend NovikovElement operator+(const NovikovElement& a, const NovikovElement& b) {
    if (a.alpha_ != b.alpha_) throw AlphaMismatch();
    NovikovElement r = a;
    for (auto& [k, c] : b.terms_) {
      auto it = r.terms_.find(k);
      if (it == r.terms_.end()) r.terms_[k] = c;
      else {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
    r.trunc_ = merge_trunc(a.trunc_, b.trunc_);
    return r;
  }
  friend NovikovElement operator-(const NovikovElement& a) {
    NovikovElement r = a;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  friend NovikovElement operator-(const NovikovElement& a, const NovikovElement& b) {
    return a + (-b);
  }
  friend NovikovElement operator*(const NovikovElement& a, const NovikovElement& b) {
    if (a.alpha_ != b.alpha_) throw AlphaMismatch();
    NovikovElement r(a.alpha_);
    for (auto& [k1, c1] : a.terms_)
      for (auto& [k2, c2] : b.terms_) {
        auto key = std::make_pair(k1.first + k2.first, k1.second + k2.second);
        auto it = r.terms_.find(key);
        if (it == r.terms_.end()) {
          if (c1 * c2 != 0) r.terms_[key] = c1 * c2;
        } else {
          it->second += c1 * c2;
          if (it->second == 0) r.terms_.erase(it);
        }
      }
    r.trunc_ = merge_trunc(a.trunc_, b.trunc_);
    return r;
  }

  Rational lambda_exponent(const std::pair<long, long>& key) const {
    return make_q(key.first, d_);
  }

  // Geometric-series inverse, truncated after `depth` correction terms.
  // Requires x = u (1 - y) with u a coefficient +-1 monomial of strictly
  // maximal lambda-exponent, so y decays in lambda.
  NovikovElement invert_unit(long depth) const {
    if (is_zero()) throw NotAUnit("zero is not a unit");
    // locate the unique maximal-r term
    long rmax = terms_.begin()->first.first;
    for (auto& [k, c] : terms_) rmax = std::max(rmax, k.first);
    auto lead = terms_.end();
    long ties = 0;
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
      if (it->first.first == rmax) {
        lead = it;
        ++ties;
      }
    if (ties != 1)
      throw NotAUnit("no strictly leading lambda-exponent (not a decaying unit)");
    if (lead->second != 1 && lead->second != -1)
      throw NotAUnit("leading coefficient " + to_string(lead->second) +
                     " is not +-1");
    // u^{-1} = +-1 * lambda^{-r} T^{-j}
    NovikovElement uinv(alpha_);
    uinv.terms_[{-lead->first.first, -lead->first.second}] = lead->second;
    // y = 1 - u^{-1} x  (all lambda-exponents strictly negative)
    NovikovElement y = one(alpha_) - uinv * (*this);
    if (y.is_zero()) {
      NovikovElement r = uinv;
      r.trunc_ = trunc_;  // exact inverse of a monomial
      return r;
    }
    NovikovElement acc = one(alpha_);
    NovikovElement pw = one(alpha_);
    for (long k = 1; k <= depth; ++k) {
      pw = pw * y;
      acc = acc + pw;
    }
    NovikovElement r = acc * uinv;
    r.trunc_ = depth;
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      Rational ac = abs(c);
      Rational r = lambda_exponent(k);
      bool has_var = r != 0 || k.second != 0;
      if (ac != 1 || !has_var) os << to_string(ac);
      bool printed = (ac != 1) && has_var;
      if (r != 0) {
        if (printed) os << "*";
        os << "l^{" << to_string(r) << "}";
        printed = true;
      }
      if (k.second != 0) {
        if (printed) os << "*";
        os << "T^{" << k.second << "}";
      }
      first = false;
    }
    if (trunc_) os << " + O(l^{-" << *trunc_ << "})";
    return os.str();
  }

 private:
  std::pair<long, long> make_key(const Rational& r, long j) const {
    Rational rd = r * d_;
    if (!is_integer(rd))
      throw std::invalid_argument("lambda exponent " + to_string(r) +
                                  " is not a multiple of 1/" + std::to_string(d_));
    return {to_long(Integer(rd.get_num())), j};
  }
  static std::optional<long> merge_trunc(std::optional<long> a,
                                         std::optional<long> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }

  Rational alpha_;
  long d_;
  std::map<std::pair<long, long>, Rational> terms_;
  std::optional<long> trunc_;
};

enum class EtaKind { positive_twist, negative_twist, crossing_blowup };

// Reducible-count element eta^alpha of the model crossing-change cobordisms:
// the blow-up branch is 1 - lambda^{4a-1} T^4 for alpha <= 1/4 and
// lambda^{1-4a} T^{-4} - 1 above; the trivial-class branch is 1.
inline NovikovElement eta_alpha(EtaKind kind, const Rational& alpha) {
  if (!(alpha > 0 && alpha < Rational(1, 2)))
    throw std::invalid_argument("alpha must lie in (0, 1/2)");
  switch (kind) {
    case EtaKind::negative_twist:
      return NovikovElement::one(alpha);
    case EtaKind::positive_twist:
    case EtaKind::crossing_blowup: {
      if (alpha <= Rational(1, 4)) {
        NovikovElement e = NovikovElement::one(alpha);
        e.set_term(4 * alpha - 1, 4, Rational(-1));
        return e;
      }
      NovikovElement e = NovikovElement::monomial(alpha, Rational(1),
                                                  1 - 4 * alpha, -4);
      e.set_term(Rational(0), 0, Rational(-1));
      return e;
    }
  }
  throw std::logic_error("unreachable");
}

// (deg_Z, deg_R) bigrading and the operators acting on it:
//   Z = lambda^{1-4a} T^{-4}: deg_Z += 0,  deg_R += (1-4a)
//   U = lambda^{2a} T^{2}:    deg_Z += 4,  deg_R += 2a
struct BiGrading {
  long deg_z = 0;
  Rational deg_r = Rational(0);

  bool operator==(const BiGrading& o) const {
    return deg_z == o.deg_z && deg_r == o.deg_r;
  }
};

enum class GradingOp { Z, U, Zinv, Uinv };

inline BiGrading apply_operator(GradingOp op, const BiGrading& g,
                                const Rational& alpha) {
  BiGrading r = g;
  switch (op) {
    case GradingOp::Z:
      r.deg_r += 1 - 4 * alpha;
      break;
    case GradingOp::Zinv:
      r.deg_r -= 1 - 4 * alpha;
      break;
    case GradingOp::U:
      r.deg_z += 4;
      r.deg_r += 2 * alpha;
      break;
    case GradingOp::Uinv:
      r.deg_z -= 4;
      r.deg_r -= 2 * alpha;
      break;
  }
  return r;
}

// Exact embedding of finite sums into F = Q(s, T) with lambda = s^D,
// xi_alpha = s^{2 alpha D} T^2. Injective on finite sums; a ring map.
inline FF to_function_field(const NovikovElement& x) {
  if (x.truncated()) throw Truncated();
  BiPoly p;
  for (auto& [k, c] : x.terms()) p.add_term(k.first, k.second, c);
  return FF::from_poly(p);
}

}  // namespace knotfloer
