#pragma once

#include <numeric>

#include "knotfloer/char_variety.hpp"
#include "knotfloer/seifert.hpp"

namespace knotfloer {

struct NonIntegralCount : std::logic_error {
  using std::logic_error::logic_error;
};

struct BrieskornTriple {
  long p, q, r;

  BrieskornTriple(long p_, long q_, long r_) : p(p_), q(q_), r(r_) {
    if (p < 1 || q < 1 || r < 1)
      throw std::invalid_argument("Brieskorn parameters must be positive");
    if (std::gcd(p, q) != 1 || std::gcd(p, r) != 1 || std::gcd(q, r) != 1)
      throw std::invalid_argument("Brieskorn parameters must be pairwise coprime");
  }
};

// sum_{l=1}^{r-1} sigma_{l/2r}(T_{p,q}); every l/2r is admissible because the
// orders dividing r are coprime to pq.
inline long equivariant_signature_sum(long p, long q, long r) {
  BrieskornTriple check(p, q, r);
  (void)check;
  if (r == 1) return 0;
  if (std::min(p, q) == 1) return 0;  // T(1, q) is the unknot
  SeifertMatrix v = torus_knot_seifert(std::min(p, q), std::max(p, q));
  long sum = 0;
  for (long l = 1; l <= r - 1; ++l) sum += tl_signature(v, make_q(l, 2 * r));
  return sum;
}

// |R*(Sigma(p,q,r), SU(2))| = -(1/4) * equivariant signature sum.
inline long brieskorn_count(long p, long q, long r) {
  long s = equivariant_signature_sum(p, q, r);
  if ((-s) % 4 != 0)
    throw NonIntegralCount("equivariant signature sum " + std::to_string(s) +
                           " is not divisible by 4");
  return (-s) / 4;
}

// Two-to-one lift correspondence: 2 |R*(Sigma(p,q,r))| equals the total
// number of singular flat connections over the r-fold branched cover slices,
// with the right side counted by the character-variety module.
inline bool verify_p2(long p, long q, long r) {
  long lhs = 2 * brieskorn_count(p, q, r);
  long rhs = 0;
  if (std::min(p, q) > 1)
    for (long l = 1; l <= r - 1; ++l)
      rhs += count_reps(std::min(p, q), std::max(p, q), make_q(l, 2 * r));
  return lhs == rhs;
}

}  // namespace knotfloer
