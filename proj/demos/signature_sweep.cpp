// Sweeps sigma_alpha and |R*_alpha| across a denominator grid for one torus
// knot and prints a small table, illustrating the counting identity.

#include <cstdio>

#include "knotfloer/char_variety.hpp"
#include "knotfloer/seifert.hpp"

using namespace knotfloer;

int main(int argc, char** argv) {
  long p = argc > 2 ? std::atol(argv[1]) : 2;
  long q = argc > 2 ? std::atol(argv[2]) : 5;
  SeifertMatrix v = torus_knot_seifert(p, q);
  std::printf("# %s\n", v.name.c_str());
  auto jumps = signature_jumps(v);
  std::printf("# jumps:");
  for (auto& a : jumps.exact) std::printf(" %s", to_string(a).c_str());
  std::printf("\n%-10s %8s %8s\n", "alpha", "sigma", "|R*|");
  for (long num = 1; num < 24; ++num) {
    Rational alpha = make_q(num, 48);
    if (!admissible(v, alpha)) {
      std::printf("%-10s %8s %8s\n", to_string(alpha).c_str(), "jump", "-");
      continue;
    }
    long sigma = tl_signature(v, alpha);
    long count = count_reps(p, q, alpha);
    std::printf("%-10s %8ld %8ld\n", to_string(alpha).c_str(), sigma, count);
  }
  return 0;
}
