#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "knotfloer/rational.hpp"

namespace knotfloer {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
struct QPoly {
  std::vector<Rational> c;

  QPoly() = default;
  explicit QPoly(long v) { if (v != 0) c = {Rational(v)}; }
  explicit QPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }
  static QPoly constant(const Rational& a) { return QPoly({a}); }
  static QPoly monomial(const Rational& a, size_t k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = a;
    return QPoly(std::move(v));
  }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return c.empty() ? -1 : static_cast<long>(c.size()) - 1; }
  const Rational& lead() const { return c.back(); }
  Rational coeff(size_t k) const { return k < c.size() ? c[k] : Rational(0); }

  bool operator==(const QPoly& o) const { return c == o.c; }
};

inline QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return QPoly(std::move(r));
}

inline QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  return QPoly(std::move(r));
}

inline QPoly operator-(const QPoly& a) {
  QPoly r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

inline QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  }
  return QPoly(std::move(r));
}

inline QPoly operator*(const Rational& s, const QPoly& a) {
  QPoly r = a;
  for (auto& x : r.c) x *= s;
  r.trim();
  return r;
}

// Euclidean division: a = q*b + r with deg r < deg b.
inline std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  QPoly rem = a, quot;
  quot.c.assign(a.c.size(), Rational(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    long k = rem.degree() - b.degree();
    Rational f = rem.lead() / b.lead();
    quot.c[k] += f;
    for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + k] -= f * b.c[i];
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

inline bool divides(const QPoly& b, const QPoly& a) {
  return divrem(a, b).second.is_zero();
}

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
inline std::tuple<QPoly, QPoly, QPoly> ext_gcd(const QPoly& a, const QPoly& b) {
  QPoly r0 = a, r1 = b;
  QPoly u0 = QPoly::constant(1), u1;
  QPoly v0, v1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
    r0 = r1; r1 = r;
    u0 = u1; u1 = u2;
    v0 = v1; v1 = v2;
  }
  if (!r0.is_zero()) {
    Rational inv_lead = 1 / r0.lead();
    r0 = inv_lead * r0;
    u0 = inv_lead * u0;
    v0 = inv_lead * v0;
  }
  return {r0, u0, v0};
}

// x^n - 1
inline QPoly xn_minus_1(long n) {
  std::vector<Rational> v(n + 1, Rational(0));
  v[0] = -1;
  v[n] = 1;
  return QPoly(std::move(v));
}

// N-th cyclotomic polynomial, memoized. Computed as (x^N-1) / prod_{d|N, d<N} Phi_d.
inline const QPoly& cyclotomic_poly(long n) {
  static std::map<long, QPoly> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::function<const QPoly&(long)> get = [&](long m) -> const QPoly& {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    QPoly num = xn_minus_1(m);
    for (long d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      auto [q, r] = divrem(num, get(d));
      if (!r.is_zero()) throw std::logic_error("cyclotomic division not exact");
      num = q;
    }
    return cache.emplace(m, std::move(num)).first->second;
  };
  return get(n);
}

// Finitely supported Laurent polynomial over Q (exponent -> coefficient).
struct LaurentQ {
  std::map<long, Rational> t;

  void set(long e, const Rational& v) {
    if (v == 0) t.erase(e);
    else t[e] = v;
  }
  Rational coeff(long e) const {
    auto it = t.find(e);
    return it == t.end() ? Rational(0) : it->second;
  }
  bool is_zero() const { return t.empty(); }
  bool operator==(const LaurentQ& o) const { return t == o.t; }

  long min_exp() const { return t.empty() ? 0 : t.begin()->first; }
  long max_exp() const { return t.empty() ? 0 : t.rbegin()->first; }

  Rational eval_one() const {
    Rational s(0);
    for (auto& [e, v] : t) s += v;
    return s;
  }
  bool symmetric() const {
    for (auto& [e, v] : t)
      if (coeff(-e) != v) return false;
    return true;
  }
};

inline LaurentQ operator+(const LaurentQ& a, const LaurentQ& b) {
  LaurentQ r = a;
  for (auto& [e, v] : b.t) r.set(e, r.coeff(e) + v);
  return r;
}

inline LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
  LaurentQ r;
  for (auto& [e1, v1] : a.t)
    for (auto& [e2, v2] : b.t) r.set(e1 + e2, r.coeff(e1 + e2) + v1 * v2);
  return r;
}

inline LaurentQ laurent_shift(const LaurentQ& a, long k) {
  LaurentQ r;
  for (auto& [e, v] : a.t) r.t[e + k] = v;
  return r;
}

inline std::string to_string(const LaurentQ& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = a.t.rbegin(); it != a.t.rend(); ++it) {
    const auto& [e, v] = *it;
    if (!first) os << (v > 0 ? " + " : " - ");
    else if (v < 0) os << "-";
    Rational av = abs(v);
    if (av != 1 || e == 0) os << to_string(av);
    if (e != 0) {
      if (av != 1) os << "*";
      os << "t";
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

}  // namespace knotfloer
