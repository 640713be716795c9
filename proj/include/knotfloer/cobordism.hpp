#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "knotfloer/novikov.hpp"
#include "knotfloer/rational.hpp"

namespace knotfloer {

struct NonIntegralIndex : std::logic_error {
  using std::logic_error::logic_error;
};
struct NonIntegral : std::logic_error {
  using std::logic_error::logic_error;
};

// A reducible connection on a cobordism of pairs: energy kappa, monopole
// number nu, and the square of the first Chern class of its line bundle.
struct Reducible {
  Rational kappa;
  Rational nu;
  long c1_sq = 0;
};

// Topological data of a cobordism of pairs (W, S): (Y, K) -> (Y', K') with a
// list of reducibles. Pure data record; model constructors below fill it in.
struct CobordismData {
  long sigma_w = 0, chi_w = 0, chi_s = 0, s_dot_s = 0, genus_s = 0;
  long sig_in = 0, sig_out = 0;  // sigma_alpha at the two ends
  Rational alpha;
  std::vector<Reducible> reducibles;
  std::string name;
};

// ind D_A = 8 kappa + 2(4a-1) nu - (3/2)(sigma(W) + chi(W)) + chi(S)
//           + 8 a^2 S.S + sigma_in - sigma_out - 1
inline long index_formula(const CobordismData& c, const Rational& kappa,
                          const Rational& nu) {
  Rational a = c.alpha;
  Rational ind = 8 * kappa + 2 * (4 * a - 1) * nu -
                 Rational(3 * (c.sigma_w + c.chi_w), 2) + c.chi_s +
                 8 * a * a * c.s_dot_s + c.sig_in - c.sig_out - 1;
  ind.canonicalize();
  if (!is_integer(ind))
    throw NonIntegralIndex("index " + to_string(ind) + " is not an integer");
  return to_long(Integer(ind.get_num()));
}

// Reducible data of the crossing-change blow-up: kappa = (m + 2a)^2,
// nu = -4m, on the cobordism with sigma(W) = -1, chi(W) = 1, chi(S) = 0,
// S.S = -4. Its index is 8m(m+1) + sig_in - sig_out - 1.
struct CrossingChangeReducible {
  Rational kappa, nu;
  long index;
};

inline CobordismData crossing_change_blowup(const Rational& alpha, long sig_in,
                                            long sig_out, long m_range = 5) {
  if (!(alpha > 0 && alpha < Rational(1, 2)))
    throw std::invalid_argument("alpha must lie in (0, 1/2)");
  CobordismData c;
  c.sigma_w = -1;
  c.chi_w = 1;
  c.chi_s = 0;
  c.s_dot_s = -4;
  c.genus_s = 0;
  c.sig_in = sig_in;
  c.sig_out = sig_out;
  c.alpha = alpha;
  c.name = "crossing-change blow-up";
  for (long m = -m_range; m <= m_range; ++m) {
    Rational k = (m + 2 * alpha) * (m + 2 * alpha);
    c.reducibles.push_back({k, Rational(-4 * m), -m * m});
  }
  return c;
}

inline CrossingChangeReducible crossing_change_reducible(const Rational& alpha,
                                                         long m, long sig_in = 0,
                                                         long sig_out = 0) {
  CobordismData c = crossing_change_blowup(alpha, sig_in, sig_out, 0);
  c.reducibles.clear();
  Rational kappa = (m + 2 * alpha) * (m + 2 * alpha);
  Rational nu(-4 * m);
  return {kappa, nu, index_formula(c, kappa, nu)};
}

// Negative crossing change: the surface class is trivial, so kappa = m^2,
// nu = 0, c1^2 = -m^2 over the same blown-up 4-manifold.
inline CobordismData negative_twist_model(const Rational& alpha, long sig_in,
                                          long sig_out, long m_range = 5) {
  CobordismData c;
  c.sigma_w = -1;
  c.chi_w = 1;
  c.chi_s = 0;
  c.s_dot_s = 0;
  c.genus_s = 0;
  c.sig_in = sig_in;
  c.sig_out = sig_out;
  c.alpha = alpha;
  c.name = "negative crossing change";
  for (long m = -m_range; m <= m_range; ++m)
    c.reducibles.push_back({Rational(m * m), Rational(0), -m * m});
  return c;
}

// Product cylinder with its flat reducible.
inline CobordismData cylinder_model(const Rational& alpha, long sig = 0) {
  CobordismData c;
  c.sig_in = sig;
  c.sig_out = sig;
  c.alpha = alpha;
  c.name = "cylinder";
  c.reducibles.push_back({Rational(0), Rational(0), 0});
  return c;
}

// (D^4, D^2) cap for the unknot end of a filling. The index formula constant
// is half-integral on caps, so only the relative ordering of reducibles and
// d^alpha are meaningful on composites containing one.
inline CobordismData disk_cap_model(const Rational& alpha) {
  CobordismData c;
  c.chi_w = 1;
  c.chi_s = 1;
  c.alpha = alpha;
  c.name = "(D4, D2) cap";
  c.reducibles.push_back({Rational(0), Rational(0), 0});
  return c;
}

// Composite of two cobordisms glued along the middle end: all additive
// invariants add, and the reducibles combine pairwise.
inline CobordismData compose(const CobordismData& a, const CobordismData& b) {
  if (a.alpha != b.alpha) throw AlphaMismatch();
  if (a.sig_out != b.sig_in)
    throw std::invalid_argument("middle boundary signatures disagree");
  CobordismData c;
  c.sigma_w = a.sigma_w + b.sigma_w;
  c.chi_w = a.chi_w + b.chi_w;
  c.chi_s = a.chi_s + b.chi_s;
  c.s_dot_s = a.s_dot_s + b.s_dot_s;
  c.genus_s = a.genus_s + b.genus_s;
  c.sig_in = a.sig_in;
  c.sig_out = b.sig_out;
  c.alpha = a.alpha;
  c.name = a.name + " o " + b.name;
  for (auto& ra : a.reducibles)
    for (auto& rb : b.reducibles)
      c.reducibles.push_back(
          {ra.kappa + rb.kappa, ra.nu + rb.nu, ra.c1_sq + rb.c1_sq});
  return c;
}

struct MinimalReducibles {
  std::vector<size_t> indices;  // into c.reducibles
  std::optional<long> min_index;  // absent when the boundary constant is not
                                  // integral (fillings and caps)
  Rational kappa0, nu0;
};

// The kappa/nu-dependent part of the index; the remaining terms are constant
// across reducibles, so this decides minimality for any boundary type.
inline Rational relative_action(const CobordismData& c, const Reducible& r) {
  return 8 * r.kappa + 2 * (4 * c.alpha - 1) * r.nu;
}

// Reducibles attaining the minimal index; kappa0 is the minimal energy among
// them, and nu0 follows the alpha = 1/4 case split.
inline MinimalReducibles minimal_reducibles(const CobordismData& c) {
  if (c.reducibles.empty())
    throw std::invalid_argument("no reducibles on this cobordism");
  MinimalReducibles out;
  Rational best = relative_action(c, c.reducibles[0]);
  for (auto& r : c.reducibles) best = std::min(best, relative_action(c, r));
  for (size_t i = 0; i < c.reducibles.size(); ++i)
    if (relative_action(c, c.reducibles[i]) == best) out.indices.push_back(i);
  try {
    out.min_index = index_formula(c, c.reducibles[out.indices[0]].kappa,
                                  c.reducibles[out.indices[0]].nu);
  } catch (const NonIntegralIndex&) {
    out.min_index = std::nullopt;
  }
  out.kappa0 = c.reducibles[out.indices[0]].kappa;
  for (size_t i : out.indices) out.kappa0 = std::min(out.kappa0, c.reducibles[i].kappa);
  if (c.alpha == Rational(1, 4)) {
    out.nu0 = c.reducibles[out.indices[0]].nu;
    for (size_t i : out.indices) out.nu0 = std::min(out.nu0, c.reducibles[i].nu);
  } else {
    // nu of the minimal reducible with kappa = kappa0 (unique)
    bool found = false;
    for (size_t i : out.indices)
      if (c.reducibles[i].kappa == out.kappa0) {
        if (found && c.reducibles[i].nu != out.nu0)
          throw std::logic_error("minimal reducible with kappa0 is not unique");
        out.nu0 = c.reducibles[i].nu;
        found = true;
      }
  }
  return out;
}

// eta^alpha(W, S) = sum over minimal reducibles of
// (-1)^{c1^2} lambda^{kappa0 - kappa} T^{nu - nu0}.
inline NovikovElement eta_of(const CobordismData& c) {
  MinimalReducibles mr = minimal_reducibles(c);
  NovikovElement eta(c.alpha);
  for (size_t i : mr.indices) {
    const Reducible& r = c.reducibles[i];
    Rational sign((r.c1_sq % 2 + 2) % 2 == 0 ? 1 : -1);
    Rational rexp = mr.kappa0 - r.kappa;
    Rational nexp = r.nu - mr.nu0;
    if (!is_integer(nexp))
      throw NonIntegral("monopole exponent " + to_string(nexp));
    long j = to_long(Integer(nexp.get_num()));
    eta.set_term(rexp, j, eta.coeff(rexp, j) + sign);
  }
  return eta;
}

// Negative-definite over the working coefficient instance: b1 = b+ = 0,
// minimal index -1, eta != 0.
inline bool negative_definite_check(const CobordismData& c, long b1_w,
                                    long bplus_w) {
  if (b1_w != 0 || bplus_w != 0) return false;
  MinimalReducibles mr = minimal_reducibles(c);
  if (!mr.min_index || *mr.min_index != -1) return false;
  return !eta_of(c).is_zero();
}

// K(A) = kappa + (alpha - 1/4) nu + alpha^2 S.S, constant across minimal
// reducibles; d^alpha(W, S) = 4 K(A_min) - g(S) - sigma_alpha(Y, K)/2 - 1
// for a filling with boundary (Y, K) at the outgoing end.
inline Rational k_of(const CobordismData& c, const Reducible& r) {
  return r.kappa + (c.alpha - Rational(1, 4)) * r.nu +
         c.alpha * c.alpha * c.s_dot_s;
}

inline long d_alpha(const CobordismData& c) {
  MinimalReducibles mr = minimal_reducibles(c);
  Rational k = k_of(c, c.reducibles[mr.indices[0]]);
  for (size_t i : mr.indices)
    if (k_of(c, c.reducibles[i]) != k)
      throw NonIntegral("K(A_min) differs across minimal reducibles");
  Rational d = 4 * k - c.genus_s - Rational(c.sig_out, 2) - 1;
  d.canonicalize();
  if (!is_integer(d))
    throw NonIntegral("d^alpha = " + to_string(d) + " is not an integer");
  return to_long(Integer(d.get_num()));
}

// --- JSON schema -------------------------------------------------------------

inline nlohmann::json cobordism_to_json(const CobordismData& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["sigma_w"] = c.sigma_w;
  j["chi_w"] = c.chi_w;
  j["chi_s"] = c.chi_s;
  j["s_dot_s"] = c.s_dot_s;
  j["genus_s"] = c.genus_s;
  j["sig_in"] = c.sig_in;
  j["sig_out"] = c.sig_out;
  j["alpha"] = to_string(c.alpha);
  j["reducibles"] = nlohmann::json::array();
  for (auto& r : c.reducibles)
    j["reducibles"].push_back({{"kappa", to_string(r.kappa)},
                               {"nu", to_string(r.nu)},
                               {"c1_sq", r.c1_sq}});
  return j;
}

inline CobordismData cobordism_from_json(const nlohmann::json& j) {
  CobordismData c;
  c.name = j.value("name", "");
  c.sigma_w = j.at("sigma_w").get<long>();
  c.chi_w = j.at("chi_w").get<long>();
  c.chi_s = j.at("chi_s").get<long>();
  c.s_dot_s = j.at("s_dot_s").get<long>();
  c.genus_s = j.value("genus_s", 0L);
  c.sig_in = j.at("sig_in").get<long>();
  c.sig_out = j.at("sig_out").get<long>();
  c.alpha = parse_rational(j.at("alpha").get<std::string>());
  for (auto& rj : j.at("reducibles"))
    c.reducibles.push_back({parse_rational(rj.at("kappa").get<std::string>()),
                            parse_rational(rj.at("nu").get<std::string>()),
                            rj.at("c1_sq").get<long>()});
  return c;
}

}  // namespace knotfloer
