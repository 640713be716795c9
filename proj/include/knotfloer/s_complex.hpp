#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotfloer/function_field.hpp"
#include "knotfloer/matrix.hpp"
#include "knotfloer/seifert.hpp"

namespace knotfloer {

struct InconsistentH : std::logic_error {
  using std::logic_error::logic_error;
};
struct BoundaryOnCut : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Z/4-graded S-complex data (C, d, v, delta1, delta2) over F = Q(s, T):
// the triple (C + C[-1] + F, d~, chi) with
//   d~ = [[d, 0, 0], [v, -d, delta2], [delta1, 0, 0]],
//   chi = [[0,0,0],[1,0,0],[0,0,0]].
// Matrices act on columns: d(i, j) is the coefficient of generator i in
// d(generator j).
struct SComplex {
  struct Generator {
    std::string label;
    int deg_z = 0;                  // Z/4 grading, stored in {0,1,2,3}
    std::optional<Rational> deg_r;  // optional R-grading (Chern-Simons level)
  };

  std::vector<Generator> gens;
  Matrix<FF> d, v;
  std::vector<FF> delta1;  // row vector: C -> F
  std::vector<FF> delta2;  // column vector: F -> C

  size_t rank() const { return gens.size(); }

  static SComplex empty() {
    SComplex c;
    c.d = Matrix<FF>(0, 0);
    c.v = Matrix<FF>(0, 0);
    return c;
  }
};

// The unit for the tensor product: C = 0, only the R summand.
inline SComplex unit_complex() { return SComplex::empty(); }

// Building block B: one generator in degree 1, d = v = 0, delta1 = 1,
// delta2 = 0. Models the rank-one complex of a two-bridge torus knot at a
// parameter with signature -2; h(B) = 1.
inline SComplex block_B() {
  SComplex c;
  c.gens.push_back({"b", 1, Rational(0)});
  c.d = Matrix<FF>(1, 1);
  c.v = Matrix<FF>(1, 1);
  c.delta1 = {FF(1)};
  c.delta2 = {FF()};
  return c;
}

// Dual block: one generator in degree 2, delta2(1) = generator, delta1 = 0;
// h(B+) = -1.
inline SComplex block_B_dual() {
  SComplex c;
  c.gens.push_back({"b+", 2, Rational(0)});
  c.d = Matrix<FF>(1, 1);
  c.v = Matrix<FF>(1, 1);
  c.delta1 = {FF()};
  c.delta2 = {FF(1)};
  return c;
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace scx_detail {

inline bool degree_ok(int from, int to, int shift) {
  return ((from + shift) % 4 + 4) % 4 == (to % 4 + 4) % 4;
}

}  // namespace scx_detail

// Checks the S-complex relations d^2 = 0, delta1 d = 0, d delta2 = 0,
// d v - v d - delta2 delta1 = 0, and the grading constraints: d has degree
// -1, v degree -2, delta1 is supported on degree 1, delta2 lands in degree 2.
inline ValidationReport validate(const SComplex& c) {
  ValidationReport rep;
  size_t n = c.rank();
  if (c.d.rows != n || c.d.cols != n || c.v.rows != n || c.v.cols != n ||
      c.delta1.size() != n || c.delta2.size() != n) {
    rep.violations.push_back("dimension mismatch");
    return rep;
  }
  Matrix<FF> dd = c.d * c.d;
  if (!is_zero_matrix(dd)) rep.violations.push_back("d^2 != 0");
  // delta1 * d
  for (size_t j = 0; j < n; ++j) {
    FF s;
    for (size_t k = 0; k < n; ++k) s = s + c.delta1[k] * c.d(k, j);
    if (!s.is_zero()) {
      rep.violations.push_back("delta1 d != 0");
      break;
    }
  }
  // d * delta2
  for (size_t i = 0; i < n; ++i) {
    FF s;
    for (size_t k = 0; k < n; ++k) s = s + c.d(i, k) * c.delta2[k];
    if (!s.is_zero()) {
      rep.violations.push_back("d delta2 != 0");
      break;
    }
  }
  // d v - v d - delta2 delta1
  Matrix<FF> rel = c.d * c.v - c.v * c.d;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      rel(i, j) = rel(i, j) - c.delta2[i] * c.delta1[j];
  if (!is_zero_matrix(rel))
    rep.violations.push_back("d v - v d - delta2 delta1 != 0");
  // gradings
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!(c.d(i, j) == FF()) &&
          !scx_detail::degree_ok(c.gens[j].deg_z, c.gens[i].deg_z, -1)) {
        rep.violations.push_back("d is not homogeneous of degree -1");
        goto after_d;
      }
    }
after_d:
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!(c.v(i, j) == FF()) &&
          !scx_detail::degree_ok(c.gens[j].deg_z, c.gens[i].deg_z, -2)) {
        rep.violations.push_back("v is not homogeneous of degree -2");
        goto after_v;
      }
    }
after_v:
  for (size_t j = 0; j < n; ++j)
    if (!(c.delta1[j] == FF()) && c.gens[j].deg_z % 4 != 1) {
      rep.violations.push_back("delta1 supported outside degree 1");
      break;
    }
  for (size_t i = 0; i < n; ++i)
    if (!(c.delta2[i] == FF()) && c.gens[i].deg_z % 4 != 2) {
      rep.violations.push_back("delta2 lands outside degree 2");
      break;
    }
  return rep;
}

namespace scx_detail {

// Sparse vector over the basis of C~ = C + C[-1] + F: indices [0, n) are the
// C copy, [n, 2n) the shifted copy, 2n the F summand.
using SparseVec = std::map<long, FF>;

inline void add_to(SparseVec& w, long idx, const FF& c) {
  if (c.is_zero()) return;
  auto it = w.find(idx);
  if (it == w.end()) w[idx] = c;
  else {
    it->second = it->second + c;
    if (it->second.is_zero()) w.erase(it);
  }
}

// d~ applied to the k-th basis vector of C~.
inline SparseVec dtilde_column(const SComplex& c, long k) {
  long n = static_cast<long>(c.rank());
  SparseVec w;
  if (k < n) {  // A slot: (d a, v a, delta1 a)
    for (long h = 0; h < n; ++h) {
      add_to(w, h, c.d(h, k));
      add_to(w, n + h, c.v(h, k));
    }
    add_to(w, 2 * n, c.delta1[k]);
  } else if (k < 2 * n) {  // B slot: -d b
    long g = k - n;
    for (long h = 0; h < n; ++h) add_to(w, n + h, FF() - c.d(h, g));
  } else {  // R slot: delta2
    for (long h = 0; h < n; ++h) add_to(w, n + h, c.delta2[h]);
  }
  return w;
}

// degree (mod 4) of the k-th basis vector of C~
inline int ctilde_degree(const SComplex& c, long k) {
  long n = static_cast<long>(c.rank());
  if (k < n) return c.gens[k].deg_z % 4;
  if (k < 2 * n) return (c.gens[k - n].deg_z + 1) % 4;
  return 0;
}

// Layout of the derived product complex on
//   C# = (C x C') + (C x C')[-1] + C + C'.
struct TensorLayout {
  long n, n2;
  long out_rank() const { return 2 * n * n2 + n + n2; }
  long part1(long g, long g2) const { return g * n2 + g2; }
  long part2(long g, long g2) const { return n * n2 + g * n2 + g2; }
  long part3(long g) const { return 2 * n * n2 + g; }
  long part4(long g2) const { return 2 * n * n2 + n + g2; }
  long big(long i, long i2) const { return i * (2 * n2 + 1) + i2; }
};

// Decomposition of a vector on C~ x C~' into the split form: the slot-one
// component (a map on product generators), the shifted component read through
// chi# (the v-type output), and the F x F coefficient.
struct Decomposed {
  SparseVec slot1;   // indices into the product generator list
  SparseVec shifted; // same index space, the chi#-identified copy
  FF r_coeff;
};

inline Decomposed decompose(const SComplex& a, const SComplex& b, SparseVec w) {
  TensorLayout L{static_cast<long>(a.rank()), static_cast<long>(b.rank())};
  Decomposed out;
  long n = L.n, n2 = L.n2;
  auto slot_of = [&](long i, long bound) {
    if (i < bound) return 0;       // A
    if (i < 2 * bound) return 1;   // B
    return 2;                      // R
  };
  // pass 1: (B, A) coordinates identify chi# of (A, A); each such term also
  // carries a signed (A, B) shadow that must be removed before pass 2
  std::vector<std::pair<long, FF>> ba;
  for (auto& [idx, coeff] : w) {
    long i = idx / (2 * n2 + 1), i2 = idx % (2 * n2 + 1);
    if (slot_of(i, n) == 1 && slot_of(i2, n2) == 0)
      ba.emplace_back(idx, coeff);
  }
  for (auto& [idx, coeff] : ba) {
    long i = idx / (2 * n2 + 1), i2 = idx % (2 * n2 + 1);
    long g = i - n, g2 = i2;
    add_to(out.shifted, L.part1(g, g2), coeff);
    w.erase(idx);
    int sign = a.gens[g].deg_z % 2 == 0 ? 1 : -1;
    FF shadow = sign > 0 ? coeff : FF() - coeff;
    add_to(w, L.big(g, n2 + g2), FF() - shadow);
  }
  // pass 2: everything else is direct
  for (auto& [idx, coeff] : w) {
    long i = idx / (2 * n2 + 1), i2 = idx % (2 * n2 + 1);
    int s1 = slot_of(i, n), s2 = slot_of(i2, n2);
    if (s1 == 0 && s2 == 0) add_to(out.slot1, L.part1(i, i2), coeff);
    else if (s1 == 0 && s2 == 1) add_to(out.slot1, L.part2(i, i2 - n2), coeff);
    else if (s1 == 0 && s2 == 2) add_to(out.slot1, L.part3(i), coeff);
    else if (s1 == 2 && s2 == 0) add_to(out.slot1, L.part4(i2), coeff);
    else if (s1 == 1 && s2 == 1) add_to(out.shifted, L.part2(i - n, i2 - n2), coeff);
    else if (s1 == 1 && s2 == 2) add_to(out.shifted, L.part3(i - n), coeff);
    else if (s1 == 2 && s2 == 1) add_to(out.shifted, L.part4(i2 - n2), coeff);
    else if (s1 == 2 && s2 == 2) out.r_coeff = out.r_coeff + coeff;
    else throw std::logic_error("unexpected (B, A) coordinate after pass 1");
  }
  return out;
}

// d~# = d~ x 1 + eps x d~' applied to the C~ x C~' basis vector (i, i2).
inline SparseVec dtensor_column(const SComplex& a, const SComplex& b, long i,
                                long i2) {
  TensorLayout L{static_cast<long>(a.rank()), static_cast<long>(b.rank())};
  SparseVec w;
  for (auto& [h, c] : dtilde_column(a, i)) add_to(w, L.big(h, i2), c);
  int sign = ctilde_degree(a, i) % 2 == 0 ? 1 : -1;
  for (auto& [h2, c] : dtilde_column(b, i2))
    add_to(w, L.big(i, h2), sign > 0 ? c : FF() - c);
  return w;
}

inline std::optional<Rational> add_deg_r(const std::optional<Rational>& x,
                                         const std::optional<Rational>& y) {
  if (x && y) return *x + *y;
  return std::nullopt;
}

}  // namespace scx_detail

// Product S-complex, derived by expanding d~# = d~ x 1 + eps x d~' and
// chi# = chi x 1 + eps x chi' on the splitting
// C# = (C x C') + (C x C')[-1] + C + C' and reading off (d#, v#, d1#, d2#).
inline SComplex tensor(const SComplex& a, const SComplex& b) {
  using namespace scx_detail;
  TensorLayout L{static_cast<long>(a.rank()), static_cast<long>(b.rank())};
  long N = L.out_rank();
  SComplex out;
  out.gens.resize(N);
  for (long g = 0; g < L.n; ++g)
    for (long g2 = 0; g2 < L.n2; ++g2) {
      out.gens[L.part1(g, g2)] = {a.gens[g].label + "*" + b.gens[g2].label,
                                  (a.gens[g].deg_z + b.gens[g2].deg_z) % 4,
                                  add_deg_r(a.gens[g].deg_r, b.gens[g2].deg_r)};
      out.gens[L.part2(g, g2)] = {"s(" + a.gens[g].label + "*" + b.gens[g2].label + ")",
                                  (a.gens[g].deg_z + b.gens[g2].deg_z + 1) % 4,
                                  add_deg_r(a.gens[g].deg_r, b.gens[g2].deg_r)};
    }
  for (long g = 0; g < L.n; ++g)
    out.gens[L.part3(g)] = a.gens[g];
  for (long g2 = 0; g2 < L.n2; ++g2)
    out.gens[L.part4(g2)] = b.gens[g2];

  out.d = Matrix<FF>(N, N);
  out.v = Matrix<FF>(N, N);
  out.delta1.assign(N, FF());
  out.delta2.assign(N, FF());

  auto column_source = [&](long J) -> std::pair<long, long> {
    // slot-one generator J -> C~ x C~' index pair
    if (J < L.n * L.n2) return {J / L.n2, J % L.n2};                      // (A, A)
    if (J < 2 * L.n * L.n2) {
      long k = J - L.n * L.n2;
      return {k / L.n2, L.n2 + k % L.n2};                                 // (A, B)
    }
    if (J < 2 * L.n * L.n2 + L.n) return {J - 2 * L.n * L.n2, 2 * L.n2};  // (A, R)
    return {2 * L.n, J - 2 * L.n * L.n2 - L.n};                           // (R, A)
  };

  for (long J = 0; J < N; ++J) {
    auto [i, i2] = column_source(J);
    Decomposed dec = decompose(a, b, dtensor_column(a, b, i, i2));
    for (auto& [I, c] : dec.slot1) out.d(I, J) = c;
    for (auto& [I, c] : dec.shifted) out.v(I, J) = c;
    out.delta1[J] = dec.r_coeff;
  }
  // delta2 from the F x F input
  {
    Decomposed dec = decompose(a, b, dtensor_column(a, b, 2 * L.n, 2 * L.n2));
    if (!dec.slot1.empty() || !dec.r_coeff.is_zero())
      throw std::logic_error("tensor: delta2 column has unexpected components");
    for (auto& [I, c] : dec.shifted) out.delta2[I] = c;
  }
  return out;
}

// Homology ranks of (C, d) per Z/4 degree, by exact fraction-free rank
// computation. Degrees with rank zero are omitted.
namespace scx_detail {

// rank of the submatrix of d on columns of degree `dg` (rows restricted to
// the nonzero ones), computed fraction-free over the Laurent polynomial ring
// after clearing row denominators.
inline size_t graded_rank(const SComplex& c, int dg) {
  size_t n = c.rank();
  std::vector<size_t> cols;
  for (size_t j = 0; j < n; ++j)
    if (c.gens[j].deg_z % 4 == dg) cols.push_back(j);
  std::vector<size_t> rows;
  for (size_t i = 0; i < n; ++i) {
    bool nz = false;
    for (size_t j : cols)
      if (!(c.d(i, j) == FF())) {
        nz = true;
        break;
      }
    if (nz) rows.push_back(i);
  }
  if (rows.empty() || cols.empty()) return 0;
  Matrix<BiPoly> m(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    BiPoly denprod(1);
    for (size_t j = 0; j < cols.size(); ++j)
      denprod = denprod * c.d(rows[i], cols[j]).den();
    for (size_t j = 0; j < cols.size(); ++j) {
      const FF& e = c.d(rows[i], cols[j]);
      auto q = exact_divide(denprod, e.den());
      m(i, j) = e.num() * *q;
    }
  }
  return rank_bareiss<BiPoly>(m, [](const BiPoly& x, const BiPoly& y) {
    auto q = exact_divide(x, y);
    if (!q) throw std::logic_error("bareiss division not exact");
    return *q;
  });
}

}  // namespace scx_detail

inline std::map<int, long> homology_ranks(const SComplex& c) {
  std::map<int, long> out;
  size_t n = c.rank();
  long dims[4] = {0, 0, 0, 0};
  for (size_t i = 0; i < n; ++i) dims[c.gens[i].deg_z % 4]++;
  size_t rk[4];
  for (int dg = 0; dg < 4; ++dg) rk[dg] = scx_detail::graded_rank(c, dg);
  for (int dg = 0; dg < 4; ++dg) {
    long h = dims[dg] - static_cast<long>(rk[dg]) -
             static_cast<long>(rk[(dg + 1) % 4]);
    if (h != 0) out[dg] = h;
  }
  return out;
}

// Euler characteristic of the homology: even degrees count +1, odd -1.
inline long euler_char(const SComplex& c) {
  long chi = 0;
  for (auto& [dg, h] : homology_ranks(c)) chi += (dg % 2 == 0) ? h : -h;
  return chi;
}

namespace scx_detail {

// Largest k >= 1 admitting beta in ker d with delta1 v^i beta = 0 for
// i <= k-2 and delta1 v^{k-1} beta != 0; returns 0 when none. The witness
// spaces are nested, so the first empty level ends the search.
inline long positive_h(const SComplex& c) {
  size_t n = c.rank();
  if (n == 0) return 0;
  // kernel of d, assembled per degree (d is graded)
  std::vector<std::vector<FF>> basis;  // vectors in F^n
  for (int dg = 0; dg < 4; ++dg) {
    std::vector<size_t> cols;
    for (size_t j = 0; j < n; ++j)
      if (c.gens[j].deg_z % 4 == dg) cols.push_back(j);
    if (cols.empty()) continue;
    std::vector<size_t> rows;
    for (size_t i = 0; i < n; ++i) {
      bool nz = false;
      for (size_t j : cols)
        if (!(c.d(i, j) == FF())) {
          nz = true;
          break;
        }
      if (nz) rows.push_back(i);
    }
    Matrix<FF> sub(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) sub(i, j) = c.d(rows[i], cols[j]);
    std::vector<std::vector<FF>> ker;
    rank_kernel_field<FF>(sub, &ker);
    for (auto& kv : ker) {
      std::vector<FF> full(n);
      for (size_t j = 0; j < cols.size(); ++j) full[cols[j]] = kv[j];
      basis.push_back(std::move(full));
    }
  }
  if (basis.empty()) return 0;

  // rows delta1 v^{k-1} computed iteratively
  std::vector<FF> row = c.delta1;
  long h = 0;
  for (long k = 1; k <= static_cast<long>(n) + 1; ++k) {
    // w = row restricted to current witness space
    std::vector<FF> w(basis.size());
    bool nonzero = false;
    for (size_t b = 0; b < basis.size(); ++b) {
      FF s;
      for (size_t j = 0; j < n; ++j)
        if (!(row[j] == FF())) s = s + row[j] * basis[b][j];
      w[b] = s;
      if (!s.is_zero()) nonzero = true;
    }
    if (!nonzero) break;
    h = k;
    // shrink the witness space to ker(w)
    Matrix<FF> wm(1, basis.size());
    for (size_t b = 0; b < basis.size(); ++b) wm(0, b) = w[b];
    std::vector<std::vector<FF>> ker;
    rank_kernel_field<FF>(wm, &ker);
    std::vector<std::vector<FF>> next;
    for (auto& coords : ker) {
      std::vector<FF> vnew(n);
      for (size_t b = 0; b < basis.size(); ++b)
        if (!(coords[b] == FF()))
          for (size_t j = 0; j < n; ++j)
            vnew[j] = vnew[j] + coords[b] * basis[b][j];
      next.push_back(std::move(vnew));
    }
    basis = std::move(next);
    if (basis.empty()) break;
    // row <- row * v
    std::vector<FF> nrow(n);
    for (size_t j = 0; j < n; ++j) {
      FF s;
      for (size_t kk = 0; kk < n; ++kk)
        if (!(row[kk] == FF()) && !(c.v(kk, j) == FF()))
          s = s + row[kk] * c.v(kk, j);
      nrow[j] = s;
    }
    row = std::move(nrow);
  }
  return h;
}

// Duality transpose with delta1 <-> delta2 swapped; negative h side runs the
// positive criterion there.
inline SComplex transpose_dual(const SComplex& c) {
  SComplex t;
  size_t n = c.rank();
  t.gens = c.gens;  // gradings unused by positive_h's algebra on this side
  t.d = c.d.transposed();
  t.v = c.v.transposed();
  t.delta1.assign(n, FF());
  t.delta2.assign(n, FF());
  for (size_t i = 0; i < n; ++i) {
    t.delta1[i] = c.delta2[i];
    t.delta2[i] = c.delta1[i];
  }
  return t;
}

// positive_h needs the graded kernel; the transpose of a degree -1 graded map
// is graded for the reversed grading. Rather than re-grade, compute the
// kernel ungraded on the dual side.
inline long positive_h_ungraded(const SComplex& c) {
  size_t n = c.rank();
  if (n == 0) return 0;
  std::vector<std::vector<FF>> basis;
  rank_kernel_field<FF>(c.d, &basis);
  if (basis.empty()) return 0;
  std::vector<FF> row = c.delta1;
  long h = 0;
  for (long k = 1; k <= static_cast<long>(n) + 1; ++k) {
    std::vector<FF> w(basis.size());
    bool nonzero = false;
    for (size_t b = 0; b < basis.size(); ++b) {
      FF s;
      for (size_t j = 0; j < n; ++j)
        if (!(row[j] == FF())) s = s + row[j] * basis[b][j];
      w[b] = s;
      if (!s.is_zero()) nonzero = true;
    }
    if (!nonzero) break;
    h = k;
    Matrix<FF> wm(1, basis.size());
    for (size_t b = 0; b < basis.size(); ++b) wm(0, b) = w[b];
    std::vector<std::vector<FF>> ker;
    rank_kernel_field<FF>(wm, &ker);
    std::vector<std::vector<FF>> next;
    for (auto& coords : ker) {
      std::vector<FF> vnew(n);
      for (size_t b = 0; b < basis.size(); ++b)
        if (!(coords[b] == FF()))
          for (size_t j = 0; j < n; ++j)
            vnew[j] = vnew[j] + coords[b] * basis[b][j];
      next.push_back(std::move(vnew));
    }
    basis = std::move(next);
    if (basis.empty()) break;
    std::vector<FF> nrow(n);
    for (size_t j = 0; j < n; ++j) {
      FF s;
      for (size_t kk = 0; kk < n; ++kk)
        if (!(row[kk] == FF()) && !(c.v(kk, j) == FF()))
          s = s + row[kk] * c.v(kk, j);
      nrow[j] = s;
    }
    row = std::move(nrow);
  }
  return h;
}

}  // namespace scx_detail

// Froyshov invariant: h >= k is witnessed through delta1 v^{k-1} on ker d;
// h <= -k through the duality-completed criterion (the same computation on
// the transposed complex with delta1 and delta2 swapped). Both witnesses at
// once would contradict well-definedness.
inline long froyshov(const SComplex& c) {
  long hp = scx_detail::positive_h(c);
  long hn = scx_detail::positive_h_ungraded(scx_detail::transpose_dual(c));
  if (hp > 0 && hn > 0)
    throw InconsistentH("positive and negative Froyshov witnesses coexist");
  return hp > 0 ? hp : -hn;
}

// Structure-theorem model of the torus-knot S-complex: B^{(x) l} with
// l = -sigma_alpha(T_{p,q}) / 2.
inline SComplex torus_model(long p, long q, const Rational& alpha) {
  SeifertMatrix vmat = torus_knot_seifert(p, q);
  if (!admissible(vmat, alpha)) throw NotAdmissible(alpha);
  long sigma = tl_signature(vmat, alpha);
  if (sigma > 0)
    throw std::logic_error("torus knot with positive signature");
  long l = -sigma / 2;
  SComplex acc = unit_complex();
  SComplex b = block_B();
  for (long i = 0; i < l; ++i) acc = tensor(acc, b);
  return acc;
}

// S-morphism blocks (m, mu, Delta1, Delta2, eta) between two S-complexes.
struct SMorphism {
  Matrix<FF> m, mu;          // dst.rank x src.rank
  std::vector<FF> Delta1;    // row on src
  std::vector<FF> Delta2;    // column on dst
  FF eta;

  static SMorphism identity(const SComplex& c) {
    SMorphism f;
    size_t n = c.rank();
    f.m = Matrix<FF>::identity(n);
    f.mu = Matrix<FF>(n, n);
    f.Delta1.assign(n, FF());
    f.Delta2.assign(n, FF());
    f.eta = FF(1);
    return f;
  }
};

// The four chain-map relations of an S-morphism, plus eta != 0.
inline ValidationReport morphism_validate(const SMorphism& f,
                                          const SComplex& src,
                                          const SComplex& dst) {
  ValidationReport rep;
  size_t ns = src.rank(), nd = dst.rank();
  if (f.m.rows != nd || f.m.cols != ns || f.mu.rows != nd || f.mu.cols != ns ||
      f.Delta1.size() != ns || f.Delta2.size() != nd) {
    rep.violations.push_back("dimension mismatch");
    return rep;
  }
  if (f.eta.is_zero()) rep.violations.push_back("eta = 0");
  if (!is_zero_matrix(f.m * src.d - dst.d * f.m))
    rep.violations.push_back("m d - d' m != 0");
  for (size_t j = 0; j < ns; ++j) {
    FF s = f.eta * src.delta1[j];
    for (size_t k = 0; k < ns; ++k) s = s + f.Delta1[k] * src.d(k, j);
    for (size_t k = 0; k < nd; ++k) s = s - dst.delta1[k] * f.m(k, j);
    if (!s.is_zero()) {
      rep.violations.push_back("Delta1 d + eta delta1 - delta1' m != 0");
      break;
    }
  }
  for (size_t i = 0; i < nd; ++i) {
    FF s = FF() - dst.delta2[i] * f.eta;
    for (size_t k = 0; k < nd; ++k) s = s + dst.d(i, k) * f.Delta2[k];
    for (size_t k = 0; k < ns; ++k) s = s + f.m(i, k) * src.delta2[k];
    if (!s.is_zero()) {
      rep.violations.push_back("d' Delta2 - delta2' eta + m delta2 != 0");
      break;
    }
  }
  Matrix<FF> rel = f.mu * src.d + f.m * src.v - dst.v * f.m + dst.d * f.mu;
  for (size_t i = 0; i < nd; ++i)
    for (size_t j = 0; j < ns; ++j) {
      FF s = rel(i, j) - f.Delta2[i] * src.delta1[j] - dst.delta2[i] * f.Delta1[j];
      if (!s.is_zero()) {
        rep.violations.push_back(
            "mu d + m v - Delta2 delta1 - v' m + d' mu - delta2' Delta1 != 0");
        goto done;
      }
    }
done:
  return rep;
}

namespace scx_detail {

// m~ applied to the k-th basis vector of the source C~.
inline SparseVec mtilde_column(const SMorphism& f, const SComplex& src,
                               const SComplex& dst, long k) {
  long ns = static_cast<long>(src.rank()), nd = static_cast<long>(dst.rank());
  SparseVec w;
  if (k < ns) {
    for (long h = 0; h < nd; ++h) {
      add_to(w, h, f.m(h, k));
      add_to(w, nd + h, f.mu(h, k));
    }
    add_to(w, 2 * nd, f.Delta1[k]);
  } else if (k < 2 * ns) {
    long g = k - ns;
    for (long h = 0; h < nd; ++h) add_to(w, nd + h, f.m(h, g));
  } else {
    for (long h = 0; h < nd; ++h) add_to(w, nd + h, f.Delta2[h]);
    add_to(w, 2 * nd, f.eta);
  }
  return w;
}

}  // namespace scx_detail

// Product of S-morphisms on the derived product complexes: m~# = m~1 x m~2
// (degree 0, no sign), decomposed into S-morphism blocks on the layouts of
// tensor(srcA, srcB) and tensor(dstA, dstB).
inline SMorphism tensor_morphism(const SMorphism& f1, const SComplex& srcA,
                                 const SComplex& dstA, const SMorphism& f2,
                                 const SComplex& srcB, const SComplex& dstB) {
  using namespace scx_detail;
  TensorLayout Ls{static_cast<long>(srcA.rank()), static_cast<long>(srcB.rank())};
  long Ns = Ls.out_rank();
  TensorLayout Ld{static_cast<long>(dstA.rank()), static_cast<long>(dstB.rank())};
  long Nd = Ld.out_rank();

  SMorphism out;
  out.m = Matrix<FF>(Nd, Ns);
  out.mu = Matrix<FF>(Nd, Ns);
  out.Delta1.assign(Ns, FF());
  out.Delta2.assign(Nd, FF());

  auto column_source = [&](long J) -> std::pair<long, long> {
    if (J < Ls.n * Ls.n2) return {J / Ls.n2, J % Ls.n2};
    if (J < 2 * Ls.n * Ls.n2) {
      long k = J - Ls.n * Ls.n2;
      return {k / Ls.n2, Ls.n2 + k % Ls.n2};
    }
    if (J < 2 * Ls.n * Ls.n2 + Ls.n) return {J - 2 * Ls.n * Ls.n2, 2 * Ls.n2};
    return {2 * Ls.n, J - 2 * Ls.n * Ls.n2 - Ls.n};
  };
  auto apply_pair = [&](long i, long i2) {
    SparseVec w;
    for (auto& [h, c] : mtilde_column(f1, srcA, dstA, i))
      for (auto& [h2, c2] : mtilde_column(f2, srcB, dstB, i2)) {
        TensorLayout Lb{static_cast<long>(dstA.rank()),
                        static_cast<long>(dstB.rank())};
        add_to(w, Lb.big(h, h2), c * c2);
      }
    return w;
  };

  for (long J = 0; J < Ns; ++J) {
    auto [i, i2] = column_source(J);
    Decomposed dec = decompose(dstA, dstB, apply_pair(i, i2));
    for (auto& [I, c] : dec.slot1) out.m(I, J) = c;
    for (auto& [I, c] : dec.shifted) out.mu(I, J) = c;
    out.Delta1[J] = dec.r_coeff;
  }
  {
    Decomposed dec =
        decompose(dstA, dstB, apply_pair(2 * Ls.n, 2 * Ls.n2));
    if (!dec.slot1.empty())
      throw std::logic_error("tensor_morphism: unexpected slot-one output on R");
    for (auto& [I, c] : dec.shifted) out.Delta2[I] = c;
    out.eta = dec.r_coeff;
  }
  return out;
}

// Sub-quotient on the open R-grading window (r0, r1); every generator must
// carry deg_r and none may sit exactly on a cut.
inline SComplex filtered_truncate(const SComplex& c, const Rational& r0,
                                  const Rational& r1) {
  if (!(r0 < r1)) throw std::invalid_argument("need r0 < r1");
  size_t n = c.rank();
  std::vector<size_t> keep;
  for (size_t i = 0; i < n; ++i) {
    if (!c.gens[i].deg_r)
      throw std::invalid_argument("generator without deg_r in filtered_truncate");
    const Rational& r = *c.gens[i].deg_r;
    if (r == r0 || r == r1)
      throw BoundaryOnCut("generator " + c.gens[i].label +
                          " sits on the cut at " + to_string(r));
    if (r0 < r && r < r1) keep.push_back(i);
  }
  SComplex out;
  size_t m = keep.size();
  out.d = Matrix<FF>(m, m);
  out.v = Matrix<FF>(m, m);
  out.delta1.assign(m, FF());
  out.delta2.assign(m, FF());
  for (size_t i = 0; i < m; ++i) {
    out.gens.push_back(c.gens[keep[i]]);
    out.delta1[i] = c.delta1[keep[i]];
    out.delta2[i] = c.delta2[keep[i]];
    for (size_t j = 0; j < m; ++j) {
      out.d(i, j) = c.d(keep[i], keep[j]);
      out.v(i, j) = c.v(keep[i], keep[j]);
    }
  }
  Matrix<FF> dd = out.d * out.d;
  if (!is_zero_matrix(dd))
    throw std::logic_error("filtered truncation broke d^2 = 0");
  return out;
}

// --- JSON serialization -----------------------------------------------------

inline nlohmann::json scomplex_to_json(const SComplex& c) {
  nlohmann::json j;
  j["generators"] = nlohmann::json::array();
  for (auto& g : c.gens) {
    nlohmann::json gj;
    gj["label"] = g.label;
    gj["deg_z"] = g.deg_z;
    if (g.deg_r) gj["deg_r"] = to_string(*g.deg_r);
    j["generators"].push_back(gj);
  }
  auto mat = [&](const Matrix<FF>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t i = 0; i < m.rows; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (size_t jx = 0; jx < m.cols; ++jx) row.push_back(to_string(m(i, jx)));
      rows.push_back(row);
    }
    return rows;
  };
  j["d"] = mat(c.d);
  j["v"] = mat(c.v);
  j["delta1"] = nlohmann::json::array();
  for (auto& x : c.delta1) j["delta1"].push_back(to_string(x));
  j["delta2"] = nlohmann::json::array();
  for (auto& x : c.delta2) j["delta2"].push_back(to_string(x));
  return j;
}

inline SComplex scomplex_from_json(const nlohmann::json& j) {
  SComplex c;
  for (auto& gj : j.at("generators")) {
    SComplex::Generator g;
    g.label = gj.at("label").get<std::string>();
    g.deg_z = ((gj.at("deg_z").get<int>() % 4) + 4) % 4;
    if (gj.contains("deg_r"))
      g.deg_r = parse_rational(gj.at("deg_r").get<std::string>());
    c.gens.push_back(g);
  }
  size_t n = c.gens.size();
  auto mat = [&](const nlohmann::json& rows) {
    Matrix<FF> m(n, n);
    if (rows.size() != n) throw std::invalid_argument("bad matrix size");
    for (size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw std::invalid_argument("bad matrix size");
      for (size_t jx = 0; jx < n; ++jx)
        m(i, jx) = parse_ff(rows[i][jx].get<std::string>());
    }
    return m;
  };
  c.d = mat(j.at("d"));
  c.v = mat(j.at("v"));
  c.delta1.clear();
  for (auto& x : j.at("delta1")) c.delta1.push_back(parse_ff(x.get<std::string>()));
  c.delta2.clear();
  for (auto& x : j.at("delta2")) c.delta2.push_back(parse_ff(x.get<std::string>()));
  if (c.delta1.size() != n || c.delta2.size() != n)
    throw std::invalid_argument("bad delta size");
  return c;
}

}  // namespace knotfloer
