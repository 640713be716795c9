#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <fstream>

#include "knotfloer/seifert.hpp"
#include "knotfloer/verify.hpp"

using namespace knotfloer;

namespace {

LaurentQ laurent_of(std::initializer_list<std::pair<long, long>> terms) {
  LaurentQ p;
  for (auto [e, c] : terms) p.set(e, Rational(c));
  return p;
}

}  // namespace

TEST_CASE("torus knot Seifert matrices have the expected shape") {
  SeifertMatrix v23 = torus_knot_seifert(2, 3);
  CHECK(v23.size() == 2);
  validate_seifert(v23);
  CHECK(torus_knot_seifert(3, 4).size() == 6);
  CHECK(torus_knot_seifert(2, 5).size() == 4);
  CHECK_THROWS_AS(torus_knot_seifert(3, 6), InvalidTorusParams);
  CHECK_THROWS_AS(torus_knot_seifert(3, 2), InvalidTorusParams);
}

TEST_CASE("alexander of the trefoil and the unknot") {
  CHECK(alexander(torus_knot_seifert(2, 3)) ==
        laurent_of({{1, 1}, {0, -1}, {-1, 1}}));
  SeifertMatrix unknot;  // 0 x 0
  CHECK(alexander(unknot) == laurent_of({{0, 1}}));
}

TEST_CASE("alexander matches the torus closed form") {
  for (auto [p, q] : std::initializer_list<std::pair<long, long>>{
           {2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}}) {
    CHECK(alexander(torus_knot_seifert(p, q)) ==
          torus_alexander_closed_form(p, q));
  }
}

TEST_CASE("admissibility at sample parameters") {
  SeifertMatrix v = torus_knot_seifert(2, 3);
  CHECK_FALSE(admissible(v, make_q(1, 12)));  // zeta_6 is a root of t^2 - t + 1
  CHECK(admissible(v, make_q(1, 4)));
  SeifertMatrix unknot;
  CHECK(admissible(unknot, make_q(1, 12)));
}

TEST_CASE("Tristram-Levine signatures at sample parameters") {
  SeifertMatrix v23 = torus_knot_seifert(2, 3);
  CHECK(tl_signature(v23, make_q(1, 4)) == -2);
  CHECK(tl_signature(v23, make_q(1, 24)) == 0);
  CHECK(tl_signature(torus_knot_seifert(2, 5), make_q(1, 5)) == -4);
  CHECK(tl_signature(v23, Rational(0)) == 0);
  CHECK(tl_signature(v23, make_q(1, 2)) == 0);
  CHECK_THROWS_AS(tl_signature(v23, make_q(1, 12)), NotAdmissible);
}

TEST_CASE("litherland lattice count for T(2, 2k+1)") {
  CHECK(litherland_t2(1, make_q(1, 6)) == -2);
  CHECK(litherland_t2(1, make_q(1, 24)) == 0);
  CHECK(litherland_t2(2, make_q(1, 5)) == -4);
  CHECK_THROWS_AS(litherland_t2(1, make_q(1, 12)), JumpPoint);
}

TEST_CASE("litherland agrees with the exact signature on a grid") {
  for (long k = 1; k <= 4; ++k) {
    SeifertMatrix v = torus_knot_seifert(2, 2 * k + 1);
    for (long den = 5; den <= 17; den += 2)
      for (long num = 1; 2 * num < den; ++num) {
        Rational a = make_q(num, den);
        if (!admissible(v, a)) continue;
        CAPTURE(k, num, den);
        CHECK(tl_signature(v, a) == litherland_t2(k, a));
      }
  }
}

TEST_CASE("signature jump sets") {
  auto j23 = signature_jumps(torus_knot_seifert(2, 3));
  CHECK(j23.exact == std::vector<Rational>{make_q(1, 12), make_q(5, 12)});
  CHECK(j23.intervals.empty());
  SeifertMatrix unknot;
  auto ju = signature_jumps(unknot);
  CHECK(ju.exact.empty());
  auto j25 = signature_jumps(torus_knot_seifert(2, 5));
  CHECK(j25.exact == std::vector<Rational>{make_q(1, 20), make_q(3, 20),
                                           make_q(7, 20), make_q(9, 20)});
}

TEST_CASE("signature is conjugation-symmetric, even, bounded, nonpositive") {
  for (auto [p, q] : std::initializer_list<std::pair<long, long>>{
           {2, 7}, {3, 4}, {3, 5}}) {
    SeifertMatrix v = torus_knot_seifert(p, q);
    for (long den = 7; den <= 13; den += 2)
      for (long num = 1; 2 * num < den; ++num) {
        Rational a = make_q(num, den);
        if (!admissible(v, a)) continue;
        long s = tl_signature(v, a);
        CHECK(s % 2 == 0);
        CHECK(std::abs(s) <= static_cast<long>(v.size()));
        CHECK(s <= 0);
        CHECK(tl_signature(v, Rational(1, 2) - a) == s);
      }
  }
}

TEST_CASE("signature is locally constant between jumps") {
  SeifertMatrix v = torus_knot_seifert(2, 3);
  // jumps at 1/12 and 5/12: sample inside (1/12, 5/12)
  long ref = tl_signature(v, make_q(1, 4));
  for (auto a : {make_q(1, 10), make_q(1, 6), make_q(2, 7), make_q(2, 5)})
    CHECK(tl_signature(v, a) == ref);
  // below the first jump
  CHECK(tl_signature(v, make_q(1, 30)) == tl_signature(v, make_q(1, 24)));
}

TEST_CASE("Seifert matrix JSON file round-trip and validation") {
  std::string path = "test_seifert_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"name": "trefoil", "matrix": [[-1, 1], [0, -1]]})";
  }
  SeifertMatrix v = load_seifert_json(path);
  CHECK(v.name == "trefoil");
  CHECK(tl_signature(v, make_q(1, 4)) == -2);
  {
    std::ofstream out(path);
    out << R"({"name": "bad", "matrix": [[0, 2], [0, 0]]})";
  }
  CHECK_THROWS_AS(load_seifert_json(path), InvalidSeifertMatrix);
  std::remove(path.c_str());
}
