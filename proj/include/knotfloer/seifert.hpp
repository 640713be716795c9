#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotfloer/cyclotomic.hpp"
#include "knotfloer/matrix.hpp"
#include "knotfloer/poly.hpp"

namespace knotfloer {

struct InvalidTorusParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAdmissible : std::domain_error {
  Rational alpha;
  explicit NotAdmissible(const Rational& a)
      : std::domain_error("alpha = " + to_string(a) +
                          " is a root of the Alexander polynomial"),
        alpha(a) {}
};
struct JumpPoint : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidSeifertMatrix : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeifertMatrix {
  std::vector<std::vector<long>> m;
  std::string name;

  size_t size() const { return m.size(); }
  long at(size_t i, size_t j) const { return m[i][j]; }
};

inline Integer det_integer(const std::vector<std::vector<long>>& m) {
  size_t n = m.size();
  Matrix<Rational> q(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) q(i, j) = Rational(m[i][j]);
  Rational d = det_bareiss<Rational>(
      q, [](const Rational& a, const Rational& b) { return Rational(a / b); });
  if (!is_integer(d)) throw std::logic_error("integer determinant not integral");
  return Integer(d.get_num());
}

// det(V - V^T) must be +-1 for V to present a knot.
inline void validate_seifert(const SeifertMatrix& v) {
  size_t n = v.size();
  for (auto& row : v.m)
    if (row.size() != n) throw InvalidSeifertMatrix("matrix is not square");
  std::vector<std::vector<long>> skew(n, std::vector<long>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) skew[i][j] = v.m[i][j] - v.m[j][i];
  Integer d = det_integer(skew);
  if (d != 1 && d != -1)
    throw InvalidSeifertMatrix("det(V - V^T) = " + d.get_str() +
                               ", expected +-1");
}

inline SeifertMatrix load_seifert_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  in >> j;
  SeifertMatrix v;
  v.name = j.value("name", "");
  for (auto& row : j.at("matrix")) {
    std::vector<long> r;
    for (auto& x : row) r.push_back(x.get<long>());
    v.m.push_back(std::move(r));
  }
  validate_seifert(v);
  return v;
}

// Seifert matrix of the (p, q)-torus knot from the fibered surface of the
// positive braid (s_1 ... s_{p-1})^q. One band per crossing; one basis cycle
// per consecutive pair of occurrences of each generator. Linking numbers are
// read from the brick positions: -1 self-linking, an asymmetric unit pair for
// cycles sharing a band, and an asymmetric unit for interleaved cycles in
// adjacent columns.
inline SeifertMatrix torus_knot_seifert(long p, long q) {
  if (!(2 <= p && p < q) || std::gcd(p, q) != 1)
    throw InvalidTorusParams("need 2 <= p < q with gcd(p, q) = 1");

  struct Cycle {
    long gen;      // generator index 1..p-1
    long t1, t2;   // positions of the two crossings it spans
  };
  std::vector<std::vector<long>> occ(p);  // occ[i] = positions of s_i
  long m_len = (p - 1) * q;
  for (long t = 1; t <= m_len; ++t) {
    long gen = ((t - 1) % (p - 1)) + 1;
    occ[gen].push_back(t);
  }
  std::vector<Cycle> cycles;
  for (long i = 1; i <= p - 1; ++i)
    for (size_t j = 0; j + 1 < occ[i].size(); ++j)
      cycles.push_back({i, occ[i][j], occ[i][j + 1]});

  size_t n = cycles.size();
  SeifertMatrix v;
  v.name = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
  v.m.assign(n, std::vector<long>(n, 0));
  for (size_t a = 0; a < n; ++a) v.m[a][a] = -1;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const Cycle& x = cycles[a];
      const Cycle& y = cycles[b];
      if (x.gen == y.gen) {
        // consecutive cycles share a band
        if (x.t2 == y.t1) v.m[a][b] = 1;
      } else if (y.gen == x.gen + 1) {
        // interleaved spans in adjacent columns intersect once; the entry
        // sits in the lower-column row, signed by which cycle starts first
        if (x.t1 < y.t1 && y.t1 < x.t2 && x.t2 < y.t2) v.m[a][b] = -1;
        else if (y.t1 < x.t1 && x.t1 < y.t2 && y.t2 < x.t2) v.m[a][b] = 1;
      }
    }
  return v;
}

// Symmetrized Alexander polynomial det(V - t V^T), normalized so that
// p(t) = p(1/t) and p(1) = 1.
inline LaurentQ alexander(const SeifertMatrix& v) {
  size_t n = v.size();
  LaurentQ result;
  if (n == 0) {
    result.set(0, 1);
    return result;
  }
  Matrix<QPoly> m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      // V_ij - t * V_ji
      std::vector<Rational> c = {Rational(v.at(i, j)), Rational(-v.at(j, i))};
      m(i, j) = QPoly(std::move(c));
    }
  QPoly d = det_bareiss<QPoly>(m, [](const QPoly& a, const QPoly& b) {
    auto [quot, rem] = divrem(a, b);
    if (!rem.is_zero()) throw std::logic_error("bareiss division not exact");
    return quot;
  });
  if (d.is_zero())
    throw InvalidSeifertMatrix("det(V - tV^T) vanishes identically");
  // strip t^k factor, center, and fix the sign at t = 1
  long low = 0;
  while (d.coeff(low) == 0) ++low;
  long high = d.degree();
  if ((high - low) % 2 != 0)
    throw InvalidSeifertMatrix("Alexander polynomial has odd breadth");
  long g = (high + low) / 2;
  Rational at_one(0);
  for (long e = low; e <= high; ++e) at_one += d.coeff(e);
  if (at_one != 1 && at_one != -1)
    throw InvalidSeifertMatrix("Alexander polynomial at t=1 is not a unit");
  Rational s = at_one;  // multiply by itself: s^2 = 1
  for (long e = low; e <= high; ++e)
    if (d.coeff(e) != 0) result.set(e - g, s * d.coeff(e));
  return result;
}

inline CyclotomicNumber eval_laurent(const LaurentQ& p,
                                     const CyclotomicNumber& x) {
  CyclotomicNumber acc;
  long n = x.order();
  for (auto& [e, c] : p.t) {
    long k = e % n;
    if (k < 0) k += n;
    acc = acc + c * CyclotomicNumber::root(n, k);
  }
  return acc;
}

// Delta_K(e^{4 pi i alpha}) != 0, decided exactly.
inline bool admissible(const SeifertMatrix& v, const Rational& alpha) {
  LaurentQ delta = alexander(v);
  CyclotomicNumber omega = root_of_unity(alpha);
  return !eval_laurent(delta, omega).is_zero();
}

namespace detail {

// Signature of a Hermitian matrix over Q(zeta) by congruence diagonalization.
// Mutates h. Throws NotAdmissible-style singularity via the supplied thrower.
inline long hermitian_signature(std::vector<std::vector<CyclotomicNumber>>& h,
                                const std::function<void()>& on_singular) {
  size_t n = h.size();
  long sig = 0;
  for (size_t k = 0; k < n; ++k) {
    // ensure a nonzero diagonal pivot at (k, k)
    if (h[k][k].is_zero()) {
      size_t d = k + 1;
      while (d < n && h[d][d].is_zero()) ++d;
      if (d < n) {
        for (size_t j = 0; j < n; ++j) std::swap(h[k][j], h[d][j]);
        for (size_t i = 0; i < n; ++i) std::swap(h[i][k], h[i][d]);
      } else {
        // all trailing diagonal entries vanish; mix two rows/columns to
        // expose a pivot: row_i += conj(H_ij) row_j makes H_ii = 2|H_ij|^2
        size_t pi = n, pj = n;
        for (size_t i = k; i < n && pi == n; ++i)
          for (size_t j = i + 1; j < n; ++j)
            if (!h[i][j].is_zero()) {
              pi = i;
              pj = j;
              break;
            }
        if (pi == n) {
          on_singular();
          return sig;  // unreachable when on_singular throws
        }
        CyclotomicNumber c = h[pi][pj];
        CyclotomicNumber cbar = c.conj();
        for (size_t j = 0; j < n; ++j) h[pi][j] = h[pi][j] + c * h[pj][j];
        for (size_t i = 0; i < n; ++i) h[i][pi] = h[i][pi] + cbar * h[i][pj];
        if (pi != k) {
          for (size_t j = 0; j < n; ++j) std::swap(h[k][j], h[pi][j]);
          for (size_t i = 0; i < n; ++i) std::swap(h[i][k], h[i][pi]);
        }
      }
    }
    const CyclotomicNumber p = h[k][k];
    sig += sign_real(p);
    CyclotomicNumber pinv = p.inverse();
    for (size_t i = k + 1; i < n; ++i) {
      if (h[i][k].is_zero()) continue;
      CyclotomicNumber f = h[i][k] * pinv;
      for (size_t j = k + 1; j < n; ++j)
        h[i][j] = h[i][j] - f * h[k][j];
      h[i][k] = CyclotomicNumber();
    }
    for (size_t j = k + 1; j < n; ++j) h[k][j] = CyclotomicNumber();
  }
  return sig;
}

}  // namespace detail

// Tristram-Levine signature: sign of (1-omega) V + (1-conj(omega)) V^T with
// omega = e^{4 pi i alpha}, computed exactly over Q(zeta). By convention the
// form vanishes at alpha in {0, 1/2} and the signature is 0 there.
inline long tl_signature(const SeifertMatrix& v, const Rational& alpha) {
  if (alpha < 0 || alpha > Rational(1, 2))
    throw std::invalid_argument("alpha must lie in [0, 1/2]");
  if (alpha == 0 || alpha == Rational(1, 2)) return 0;
  CyclotomicNumber omega = root_of_unity(alpha);
  if (omega == CyclotomicNumber(1)) return 0;
  CyclotomicNumber u = CyclotomicNumber(1) - omega;
  CyclotomicNumber ubar = CyclotomicNumber(1) - omega.conj();
  size_t n = v.size();
  std::vector<std::vector<CyclotomicNumber>> h(
      n, std::vector<CyclotomicNumber>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      h[i][j] = Rational(v.at(i, j)) * u + Rational(v.at(j, i)) * ubar;
  return detail::hermitian_signature(h, [&] { throw NotAdmissible(alpha); });
}

// sigma_alpha(T_{2, 2k+1}) by lattice-point counting: n1 - n2 with
// n1 = #{ m : (k + 1/2)(1 + 4 alpha) < m < 2k+1 } and
// n2 = #{ m : 0 < m < (k + 1/2)(1 + 4 alpha) }, valid for alpha <= 1/4;
// values above 1/4 are mirrored through alpha -> 1/2 - alpha.
inline long litherland_t2(long k, const Rational& alpha) {
  if (k < 1) throw std::invalid_argument("need k >= 1");
  if (alpha < 0 || alpha > Rational(1, 2))
    throw std::invalid_argument("alpha must lie in [0, 1/2]");
  if (alpha > Rational(1, 4)) return litherland_t2(k, Rational(1, 2) - alpha);
  Rational threshold = make_q(2 * k + 1, 2) * (1 + 4 * alpha);
  if (is_integer(threshold) && threshold > 0 && threshold < 2 * k + 1)
    throw JumpPoint("threshold " + to_string(threshold) +
                    " hits a lattice point");
  // For alpha <= 1/4 the threshold lies in [k + 1/2, 2k + 1].
  if (threshold == 2 * k + 1) return -2 * k;  // alpha = 1/4
  long f = to_long(floor_q(threshold));
  long n1 = 2 * k - f;
  long n2 = f;
  return n1 - n2;
}

struct SignatureJumps {
  std::vector<Rational> exact;  // alpha values, sorted
  // isolating intervals for jumps whose omega is not a root of unity
  std::vector<std::pair<Rational, Rational>> intervals;
};

namespace detail {

// Express a palindromic Laurent polynomial r(t) = b_0 + sum b_k (t^k + t^-k)
// as P(u) with u = t + 1/t.
inline QPoly palindromic_to_u(const LaurentQ& r) {
  long m = r.max_exp();
  std::vector<Rational> b(m + 1, Rational(0));
  b[0] = r.coeff(0);
  for (long k = 1; k <= m; ++k) b[k] = r.coeff(k);
  // q_0 = 2, q_1 = u, q_k = u q_{k-1} - q_{k-2}
  QPoly q0 = QPoly(2), q1 = QPoly::monomial(1, 1);
  QPoly u = QPoly::monomial(1, 1);
  QPoly acc = QPoly::constant(b[0]);
  if (m >= 1) acc = acc + b[1] * q1;
  QPoly prev = q0, cur = q1;
  for (long k = 2; k <= m; ++k) {
    QPoly next = u * cur - prev;
    acc = acc + b[k] * next;
    prev = cur;
    cur = next;
  }
  return acc;
}

inline QPoly qpoly_derivative(const QPoly& p) {
  if (p.c.size() <= 1) return QPoly();
  std::vector<Rational> d(p.c.size() - 1);
  for (size_t i = 1; i < p.c.size(); ++i) d[i - 1] = Rational((long)i) * p.c[i];
  return QPoly(std::move(d));
}

inline Rational qpoly_eval(const QPoly& p, const Rational& x) {
  Rational acc(0);
  for (size_t i = p.c.size(); i-- > 0;) acc = acc * x + p.c[i];
  return acc;
}

// Sturm chain sign-variation count at x.
inline long sturm_variations(const std::vector<QPoly>& chain, const Rational& x) {
  long var = 0;
  int last = 0;
  for (const auto& p : chain) {
    Rational v = qpoly_eval(p, x);
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

inline std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain;
  chain.push_back(p);
  chain.push_back(qpoly_derivative(p));
  while (!chain.back().is_zero()) {
    auto [q, r] = divrem(chain[chain.size() - 2], chain.back());
    (void)q;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

// Isolating intervals for the real roots of squarefree p in (a, b).
inline void isolate_roots(const QPoly& p, const std::vector<QPoly>& chain,
                          Rational a, Rational b,
                          std::vector<std::pair<Rational, Rational>>& out) {
  long va = sturm_variations(chain, a), vb = sturm_variations(chain, b);
  long count = va - vb;
  if (count <= 0) return;
  if (count == 1 && qpoly_eval(p, a) != 0 && qpoly_eval(p, b) != 0) {
    // shrink for a tighter enclosure
    for (int it = 0; it < 40; ++it) {
      Rational mid = (a + b) / 2;
      if (qpoly_eval(p, mid) == 0) {
        Rational eps = (b - a) / 1024;
        out.emplace_back(mid - eps, mid + eps);
        return;
      }
      if (sturm_variations(chain, a) - sturm_variations(chain, mid) == 1) b = mid;
      else a = mid;
    }
    out.emplace_back(a, b);
    return;
  }
  Rational mid = (a + b) / 2;
  while (qpoly_eval(p, mid) == 0) mid = (a + mid) / 2;
  isolate_roots(p, chain, a, mid, out);
  isolate_roots(p, chain, mid, b, out);
}

}  // namespace detail

// All alpha in (0, 1/2) where Delta(e^{4 pi i alpha}) = 0. Root-of-unity
// roots (always, for torus knots) are reported exactly as rationals; other
// unit-circle roots as isolating rational intervals via a Sturm chain in the
// variable u = 2 cos(4 pi alpha).
inline SignatureJumps signature_jumps(const SeifertMatrix& v) {
  SignatureJumps jumps;
  LaurentQ delta = alexander(v);
  // shift into an honest polynomial
  long low = delta.min_exp();
  QPoly p;
  {
    std::vector<Rational> c(delta.max_exp() - low + 1, Rational(0));
    for (auto& [e, coef] : delta.t) c[e - low] = coef;
    p = QPoly(std::move(c));
  }
  long deg = p.degree();
  // strip cyclotomic factors Phi_n; phi(n) >= sqrt(n/2) bounds the search
  for (long n = 1; n <= 2 * deg * deg + 2 && p.degree() > 0; ++n) {
    if (phi_euler(n) > p.degree()) continue;
    const QPoly& phi = cyclotomic_poly(n);
    bool took = false;
    while (p.degree() >= phi.degree() && divides(phi, p)) {
      p = divrem(p, phi).first;
      took = true;
    }
    if (!took) continue;
    // roots e^{2 pi i j / n}, gcd(j, n) = 1 correspond to alpha = j / (2n)
    for (long j = 1; j < n; ++j)
      if (std::gcd(j, n) == 1) jumps.exact.emplace_back(make_q(j, 2 * n));
  }
  std::sort(jumps.exact.begin(), jumps.exact.end());
  if (p.degree() > 0) {
    // remaining unit-circle roots: palindromic factor -> polynomial in u
    LaurentQ rem;
    long d = p.degree();
    if (d % 2 == 0) {
      long half = d / 2;
      bool palin = true;
      for (long e = 0; e <= d; ++e)
        if (p.coeff(e) != p.coeff(d - e)) palin = false;
      if (palin) {
        for (long e = 0; e <= d; ++e)
          if (p.coeff(e) != 0) rem.set(e - half, p.coeff(e));
        QPoly pu = detail::palindromic_to_u(rem);
        // squarefree part
        auto [g, a1, b1] = ext_gcd(pu, detail::qpoly_derivative(pu));
        (void)a1;
        (void)b1;
        if (g.degree() > 0) pu = divrem(pu, g).first;
        auto chain = detail::sturm_chain(pu);
        std::vector<std::pair<Rational, Rational>> u_roots;
        detail::isolate_roots(pu, chain, Rational(-2), Rational(2), u_roots);
        // u = 2 cos(4 pi alpha): each u-root gives alpha and 1/2 - alpha
        for (auto& [ulo, uhi] : u_roots) {
          mpfr_prec_t prec = 128;
          mpfr_t t1, t2, pi4;
          mpfr_init2(t1, prec);
          mpfr_init2(t2, prec);
          mpfr_init2(pi4, prec);
          mpfr_const_pi(pi4, MPFR_RNDD);
          mpfr_mul_ui(pi4, pi4, 4, MPFR_RNDD);
          // alpha_lo from u_hi (acos decreasing), alpha_hi from u_lo
          mpfr_set_q(t1, Rational(uhi / 2).get_mpq_t(), MPFR_RNDU);
          mpfr_acos(t1, t1, MPFR_RNDD);
          mpfr_div(t1, t1, pi4, MPFR_RNDD);
          mpfr_const_pi(pi4, MPFR_RNDU);
          mpfr_mul_ui(pi4, pi4, 4, MPFR_RNDU);
          mpfr_set_q(t2, Rational(ulo / 2).get_mpq_t(), MPFR_RNDD);
          mpfr_acos(t2, t2, MPFR_RNDU);
          mpfr_div(t2, t2, pi4, MPFR_RNDU);
          auto to_q = [](mpfr_srcptr x) {
            if (mpfr_zero_p(x)) return Rational(0);
            mpz_class mz;
            mpfr_exp_t e = mpfr_get_z_2exp(mz.get_mpz_t(), x);
            Rational q(mz);
            if (e >= 0)
              mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(),
                           static_cast<unsigned long>(e));
            else
              mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(),
                           static_cast<unsigned long>(-e));
            q.canonicalize();
            return q;
          };
          Rational alo = to_q(t1), ahi = to_q(t2);
          mpfr_clear(t1);
          mpfr_clear(t2);
          mpfr_clear(pi4);
          jumps.intervals.emplace_back(alo, ahi);
          jumps.intervals.emplace_back(Rational(1, 2) - ahi,
                                       Rational(1, 2) - alo);
        }
        std::sort(jumps.intervals.begin(), jumps.intervals.end());
      }
    }
  }
  return jumps;
}

}  // namespace knotfloer
