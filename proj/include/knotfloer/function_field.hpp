#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "knotfloer/rational.hpp"

namespace knotfloer {

// Laurent polynomial in two variables (s, T) over Q. Exponents may be
// negative; the zero polynomial has an empty term map.
struct BiPoly {
  std::map<std::pair<long, long>, Rational> t;  // (e_s, e_T) -> coeff

  BiPoly() = default;
  explicit BiPoly(long v) {
    if (v != 0) t[{0, 0}] = Rational(v);
  }
  explicit BiPoly(const Rational& v) {
    if (v != 0) t[{0, 0}] = v;
  }
  static BiPoly monomial(const Rational& c, long es, long eT) {
    BiPoly p;
    if (c != 0) p.t[{es, eT}] = c;
    return p;
  }

  bool is_zero() const { return t.empty(); }
  bool operator==(const BiPoly& o) const { return t == o.t; }

  void add_term(long es, long eT, const Rational& c) {
    auto key = std::make_pair(es, eT);
    auto it = t.find(key);
    if (it == t.end()) {
      if (c != 0) t[key] = c;
    } else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (auto& [e, c] : b.t) r.add_term(e.first, e.second, c);
    return r;
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    BiPoly r = a;
    for (auto& [e, c] : b.t) r.add_term(e.first, e.second, -c);
    return r;
  }
  friend BiPoly operator-(const BiPoly& a) {
    BiPoly r;
    for (auto& [e, c] : a.t) r.t[e] = -c;
    return r;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (auto& [e1, c1] : a.t)
      for (auto& [e2, c2] : b.t)
        r.add_term(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
  }

  // graded-lex leading term (highest total degree, then lex)
  std::pair<std::pair<long, long>, Rational> lead() const {
    if (t.empty()) throw std::domain_error("lead of zero polynomial");
    auto best = t.begin();
    for (auto it = t.begin(); it != t.end(); ++it) {
      long d1 = it->first.first + it->first.second;
      long d0 = best->first.first + best->first.second;
      if (d1 > d0 || (d1 == d0 && it->first > best->first)) best = it;
    }
    return *best;
  }

  // minimal exponents, for monomial-content normalization
  std::pair<long, long> min_exps() const {
    long es = 0, eT = 0;
    bool first = true;
    for (auto& [e, c] : t) {
      if (first) {
        es = e.first;
        eT = e.second;
        first = false;
      } else {
        es = std::min(es, e.first);
        eT = std::min(eT, e.second);
      }
    }
    return {es, eT};
  }

  BiPoly shifted(long ds, long dT) const {
    BiPoly r;
    for (auto& [e, c] : t) r.t[{e.first + ds, e.second + dT}] = c;
    return r;
  }
};

// Exact division a / b up to monomial units; nullopt if not divisible.
// Works on monomial-content-free copies so the graded-lex order is a
// well-order and the reduction terminates.
inline std::optional<BiPoly> exact_divide(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return BiPoly();
  auto [as, aT] = a.min_exps();
  auto [bs, bT] = b.min_exps();
  BiPoly rem = a.shifted(-as, -aT);
  BiPoly div = b.shifted(-bs, -bT);
  auto [lb, cb] = div.lead();
  BiPoly quot;
  while (!rem.is_zero()) {
    auto [lr, cr] = rem.lead();
    long es = lr.first - lb.first, eT = lr.second - lb.second;
    if (es < 0 || eT < 0) return std::nullopt;
    BiPoly m = BiPoly::monomial(cr / cb, es, eT);
    quot = quot + m;
    rem = rem - m * div;
  }
  return quot.shifted(as - bs, aT - bT);
}

// Element of the rational function field F = Q(s, T), stored as a fraction of
// Laurent polynomials. Normalization strips monomial and rational content and
// attempts opportunistic exact cancellation; full multivariate gcd is not
// required for exactness.
class FF {
 public:
  FF() : num_(), den_(1) {}
  explicit FF(long v) : num_(v), den_(1) {}
  explicit FF(const Rational& v) : num_(v), den_(1) {}
  FF(BiPoly n, BiPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
  }
  static FF from_poly(BiPoly p) { return FF(std::move(p), BiPoly(1)); }

  const BiPoly& num() const { return num_; }
  const BiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }

  bool operator==(const FF& o) const {
    return (num_ * o.den_) == (o.num_ * den_);
  }
  bool operator!=(const FF& o) const { return !(*this == o); }

  friend FF operator+(const FF& a, const FF& b) {
    return FF(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FF operator-(const FF& a, const FF& b) {
    return FF(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend FF operator-(const FF& a) { return FF(-a.num_, a.den_); }
  friend FF operator*(const FF& a, const FF& b) {
    return FF(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend FF operator/(const FF& a, const FF& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return FF(a.num_ * b.den_, a.den_ * b.num_);
  }

  bool is_rational() const {
    return (num_.is_zero() || (num_.t.size() == 1 && num_.t.begin()->first == std::make_pair(0L, 0L))) &&
           den_.t.size() == 1 && den_.t.begin()->first == std::make_pair(0L, 0L);
  }
  Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("not a rational value");
    if (num_.is_zero()) return Rational(0);
    return num_.t.begin()->second / den_.t.begin()->second;
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = BiPoly(1);
      return;
    }
    // strip monomial content
    auto [ns, nT] = num_.min_exps();
    auto [ds, dT] = den_.min_exps();
    num_ = num_.shifted(-ns, -nT);
    den_ = den_.shifted(-ds, -dT);
    // the difference of monomial contents is a unit; keep it on the numerator
    num_ = num_.shifted(ns - ds, nT - dT);
    // opportunistic exact cancellation
    if (!(den_ == BiPoly(1))) {
      if (auto q = exact_divide(num_, den_)) {
        num_ = *q;
        den_ = BiPoly(1);
      }
    }
    // rational content: make the denominator's lead 1
    if (!(den_ == BiPoly(1))) {
      auto [le, lc] = den_.lead();
      (void)le;
      if (lc != 1) {
        Rational inv = 1 / lc;
        BiPoly n2, d2;
        for (auto& [e, c] : num_.t) n2.t[e] = c * inv;
        for (auto& [e, c] : den_.t) d2.t[e] = c * inv;
        num_ = n2;
        den_ = d2;
      }
    }
  }

  BiPoly num_, den_;
};

inline std::string to_string(const BiPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, c] : p.t) {
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rational ac = abs(c);
    bool has_var = e.first != 0 || e.second != 0;
    if (ac != 1 || !has_var) os << to_string(ac);
    bool printed = ac != 1 && has_var;
    if (e.first != 0) {
      if (printed || (ac != 1)) os << "*";
      os << "s";
      if (e.first != 1) os << "^" << e.first;
      printed = true;
    }
    if (e.second != 0) {
      if (printed || ac != 1) os << "*";
      os << "T";
      if (e.second != 1) os << "^" << e.second;
    }
    first = false;
  }
  return os.str();
}

inline std::string to_string(const FF& f) {
  if (f.den() == BiPoly(1)) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

// Parser for the textual forms produced above: sums of terms
// [+-] c [* s^k][* T^k], optionally as "(num)/(den)".
inline BiPoly parse_bipoly(const std::string& s, size_t& pos);

inline FF parse_ff(const std::string& str) {
  std::string s;
  for (char c : str)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty field element");
  if (s[0] == '(') {
    size_t pos = 1;
    BiPoly num = parse_bipoly(s, pos);
    if (pos + 2 >= s.size() || s[pos] != ')' || s[pos + 1] != '/' ||
        s[pos + 2] != '(')
      throw std::invalid_argument("malformed fraction: " + str);
    pos += 3;
    BiPoly den = parse_bipoly(s, pos);
    if (pos != s.size() - 1 || s[pos] != ')')
      throw std::invalid_argument("malformed fraction: " + str);
    return FF(num, den);
  }
  size_t pos = 0;
  BiPoly p = parse_bipoly(s, pos);
  if (pos != s.size())
    throw std::invalid_argument("trailing characters in: " + str);
  return FF::from_poly(p);
}

inline BiPoly parse_bipoly(const std::string& s, size_t& pos) {
  BiPoly acc;
  bool expect_term = true;
  while (pos < s.size() && s[pos] != ')') {
    int sign = 1;
    if (s[pos] == '+') {
      ++pos;
    } else if (s[pos] == '-') {
      sign = -1;
      ++pos;
    } else if (!expect_term) {
      throw std::invalid_argument("expected + or - in polynomial");
    }
    expect_term = false;
    // coefficient
    Rational coeff(1);
    bool saw_coeff = false;
    size_t start = pos;
    while (pos < s.size() && (isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (pos > start) {
      coeff = parse_rational(s.substr(start, pos - start));
      saw_coeff = true;
    }
    long es = 0, eT = 0;
    auto parse_var = [&](char v, long& e) {
      if (pos < s.size() && s[pos] == v) {
        ++pos;
        long k = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          size_t st = pos;
          if (pos < s.size() && s[pos] == '-') ++pos;
          while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
          k = std::stol(s.substr(st, pos - st));
        }
        e += k;
        return true;
      }
      return false;
    };
    bool any = true;
    bool saw_var = false;
    while (any) {
      any = false;
      if (pos < s.size() && s[pos] == '*') ++pos;
      if (parse_var('s', es)) any = saw_var = true;
      else if (parse_var('T', eT)) any = saw_var = true;
    }
    if (!saw_coeff && !saw_var)
      throw std::invalid_argument("empty term in polynomial");
    acc.add_term(es, eT, sign * coeff);
  }
  return acc;
}

}  // namespace knotfloer
