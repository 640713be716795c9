// Tabulates flat SU(2) connection counts on small Brieskorn spheres together
// with the per-slice representation counts feeding the two-to-one identity.

#include <cstdio>

#include "knotfloer/branched.hpp"

using namespace knotfloer;

int main() {
  std::printf("%-12s %10s %14s %8s\n", "Sigma(p,q,r)", "|R*|",
              "sum of slices", "2:1 ok");
  for (auto [p, q, r] : std::initializer_list<std::array<long, 3>>{
           {2, 3, 5}, {2, 3, 7}, {2, 3, 11}, {2, 3, 13}, {2, 5, 7},
           {2, 5, 9}, {3, 4, 5}, {3, 5, 7}, {2, 7, 9}, {4, 5, 7}}) {
    long count = brieskorn_count(p, q, r);
    long slices = 0;
    for (long l = 1; l <= r - 1; ++l)
      slices += count_reps(std::min(p, q), std::max(p, q), make_q(l, 2 * r));
    std::printf("(%ld,%ld,%ld)%*s %10ld %14ld %8s\n", p, q, r,
                (int)(5 - std::to_string(p * q * r).size()), "", count, slices,
                2 * count == slices ? "yes" : "NO");
  }
  return 0;
}
