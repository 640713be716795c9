#include <catch2/catch_amalgamated.hpp>

#include "knotfloer/branched.hpp"

using namespace knotfloer;

TEST_CASE("equivariant signature sums") {
  CHECK(equivariant_signature_sum(2, 3, 5) == -8);
  CHECK(equivariant_signature_sum(2, 3, 7) == -8);
  CHECK(equivariant_signature_sum(4, 5, 1) == 0);
}

TEST_CASE("Brieskorn counts") {
  CHECK(brieskorn_count(2, 3, 5) == 2);  // the Poincare sphere
  CHECK(brieskorn_count(2, 3, 7) == 2);
  CHECK(brieskorn_count(2, 3, 11) == 4);
  // sigma_{l/14}(T(2,5)) for l = 1..6 reads -2,-2,-4,-4,-2,-2 off the jump
  // set {1/20, 3/20, 7/20, 9/20}
  CHECK(brieskorn_count(2, 5, 7) == 4);
  CHECK_THROWS_AS(brieskorn_count(2, 4, 5), std::invalid_argument);
}

TEST_CASE("two-to-one lift identity") {
  CHECK(verify_p2(2, 3, 5));
  CHECK(verify_p2(2, 3, 7));
  CHECK(verify_p2(3, 5, 2));
  CHECK(verify_p2(2, 5, 3));
}

TEST_CASE("counts are symmetric in the Brieskorn parameters") {
  for (auto [p, q, r] : std::initializer_list<std::array<long, 3>>{
           {2, 3, 5}, {2, 3, 7}, {2, 5, 3}, {3, 4, 5}}) {
    long c = brieskorn_count(p, q, r);
    CHECK(brieskorn_count(p, r, q) == c);
    CHECK(brieskorn_count(q, r, p) == c);
  }
}

TEST_CASE("signature sums are nonpositive") {
  for (auto [p, q, r] : std::initializer_list<std::array<long, 3>>{
           {2, 3, 5}, {2, 3, 11}, {2, 5, 9}, {3, 4, 5}, {3, 5, 4}})
    CHECK(equivariant_signature_sum(p, q, r) <= 0);
}
