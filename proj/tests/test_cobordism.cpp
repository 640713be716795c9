#include <catch2/catch_amalgamated.hpp>

#include "knotfloer/cobordism.hpp"

using namespace knotfloer;

TEST_CASE("crossing-change reducible indices") {
  // equal end signatures: ind = 8 m (m+1) - 1
  for (auto alpha : {make_q(1, 6), make_q(1, 4), make_q(2, 5)}) {
    auto r0 = crossing_change_reducible(alpha, 0);
    CHECK(r0.index == -1);
    auto rm1 = crossing_change_reducible(alpha, -1);
    CHECK(rm1.index == -1);
    auto r1 = crossing_change_reducible(alpha, 1);
    CHECK(r1.index == 15);
  }
  // kappa and nu values
  auto r = crossing_change_reducible(make_q(1, 4), 0);
  CHECK(r.kappa == make_q(1, 4));
  CHECK(r.nu == 0);
  auto r2 = crossing_change_reducible(make_q(1, 6), -1);
  CHECK(r2.kappa == make_q(4, 9));
  CHECK(r2.nu == 4);
  // index differences depend only on m(m+1)
  for (long m = -5; m <= 5; ++m)
    for (long mp = -5; mp <= 5; ++mp) {
      long d = crossing_change_reducible(make_q(1, 6), m).index -
               crossing_change_reducible(make_q(1, 6), mp).index;
      CHECK(d == 8 * (m * (m + 1) - mp * (mp + 1)));
    }
}

TEST_CASE("index formula is integral across the model family") {
  for (auto alpha : {make_q(1, 8), make_q(1, 6), make_q(1, 4), make_q(3, 8)}) {
    auto cb = crossing_change_blowup(alpha, -2, -2, 4);
    for (auto& red : cb.reducibles)
      CHECK_NOTHROW(index_formula(cb, red.kappa, red.nu));
    auto nt = negative_twist_model(alpha, 0, 0, 4);
    for (auto& red : nt.reducibles)
      CHECK_NOTHROW(index_formula(nt, red.kappa, red.nu));
  }
}

TEST_CASE("minimal reducibles of the blow-up are m = 0 and m = -1") {
  auto cb = crossing_change_blowup(make_q(1, 6), 0, 0, 5);
  auto mr = minimal_reducibles(cb);
  REQUIRE(mr.indices.size() == 2);
  std::vector<Rational> nus;
  for (size_t i : mr.indices) nus.push_back(cb.reducibles[i].nu);
  std::sort(nus.begin(), nus.end());
  CHECK(nus == std::vector<Rational>{Rational(0), Rational(4)});  // m = 0, -1
  CHECK(*mr.min_index == -1);
  CHECK(mr.kappa0 == make_q(1, 9));  // (0 + 2/6)^2
  CHECK(mr.nu0 == 0);
}

TEST_CASE("single trivial reducible is its own minimum") {
  auto cyl = cylinder_model(make_q(1, 6));
  auto mr = minimal_reducibles(cyl);
  REQUIRE(mr.indices.size() == 1);
  CHECK(mr.kappa0 == 0);
  CHECK(mr.nu0 == 0);
  CHECK(*mr.min_index == -1);
}

TEST_CASE("eta of the model cobordisms") {
  auto cb6 = crossing_change_blowup(make_q(1, 6), 0, 0);
  CHECK(eta_of(cb6) == eta_alpha(EtaKind::crossing_blowup, make_q(1, 6)));
  auto cb3 = crossing_change_blowup(make_q(1, 3), 0, 0);
  CHECK(eta_of(cb3) == eta_alpha(EtaKind::crossing_blowup, make_q(1, 3)));
  auto nt = negative_twist_model(make_q(1, 5), 0, 0);
  CHECK(eta_of(nt) == NovikovElement::one(make_q(1, 5)));
  // at alpha = 1/4 both minimal reducibles share kappa0; eta = 1 - T^4
  auto cb4 = crossing_change_blowup(make_q(1, 4), 0, 0);
  NovikovElement e4 = eta_of(cb4);
  CHECK(e4.coeff(Rational(0), 0) == 1);
  CHECK(e4.coeff(Rational(0), 4) == -1);
}

TEST_CASE("negative definiteness of the crossing-change pair") {
  CHECK(negative_definite_check(crossing_change_blowup(make_q(1, 6), -2, -2), 0, 0));
  // a signature drop shifts the minimal index away from -1
  CHECK_FALSE(
      negative_definite_check(crossing_change_blowup(make_q(1, 6), -4, -2), 0, 0));
  CHECK(negative_definite_check(cylinder_model(make_q(1, 6)), 0, 0));
  CHECK_FALSE(negative_definite_check(cylinder_model(make_q(1, 6)), 1, 0));
}

TEST_CASE("K is constant across minimal reducibles") {
  for (auto alpha : {make_q(1, 6), make_q(1, 4), make_q(2, 5)}) {
    auto cb = crossing_change_blowup(alpha, 0, 0);
    auto mr = minimal_reducibles(cb);
    Rational k0 = k_of(cb, cb.reducibles[mr.indices[0]]);
    for (size_t i : mr.indices) CHECK(k_of(cb, cb.reducibles[i]) == k0);
    CHECK(k0 == 0);
  }
}

TEST_CASE("d_alpha on model fillings") {
  Rational a = make_q(1, 6);
  CHECK(d_alpha(cylinder_model(a)) == -1);
  // capped composite to T(2,3): sigma goes 0 -> -2, d = 0
  auto filling = compose(disk_cap_model(a), crossing_change_blowup(a, 0, -2));
  CHECK(d_alpha(filling) == 0);
  // one more crossing change with no signature drop keeps d = 0
  auto longer = compose(filling, crossing_change_blowup(a, -2, -2));
  CHECK(d_alpha(longer) == 0);
}

TEST_CASE("composition adds kappa, nu, and index contributions") {
  Rational a = make_q(1, 8);
  auto c1 = crossing_change_blowup(a, 0, -2, 2);
  auto c2 = crossing_change_blowup(a, -2, -2, 2);
  auto comp = compose(c1, c2);
  CHECK(comp.sigma_w == c1.sigma_w + c2.sigma_w);
  CHECK(comp.s_dot_s == c1.s_dot_s + c2.s_dot_s);
  CHECK(comp.reducibles.size() == c1.reducibles.size() * c2.reducibles.size());
  // glued index: ind(A1 # A2) = ind(A1) + ind(A2) + 1
  size_t k = 0;
  for (auto& r1 : c1.reducibles)
    for (auto& r2 : c2.reducibles) {
      auto& rc = comp.reducibles[k++];
      CHECK(rc.kappa == r1.kappa + r2.kappa);
      CHECK(rc.nu == r1.nu + r2.nu);
      CHECK(index_formula(comp, rc.kappa, rc.nu) ==
            index_formula(c1, r1.kappa, r1.nu) +
                index_formula(c2, r2.kappa, r2.nu) + 1);
    }
  CHECK_THROWS_AS(compose(c1, crossing_change_blowup(a, 0, 0)),
                  std::invalid_argument);
}

TEST_CASE("JSON round-trip of cobordism data") {
  auto cb = crossing_change_blowup(make_q(1, 6), 0, -2, 3);
  auto j = cobordism_to_json(cb);
  auto back = cobordism_from_json(j);
  CHECK(back.sigma_w == cb.sigma_w);
  CHECK(back.alpha == cb.alpha);
  REQUIRE(back.reducibles.size() == cb.reducibles.size());
  for (size_t i = 0; i < cb.reducibles.size(); ++i) {
    CHECK(back.reducibles[i].kappa == cb.reducibles[i].kappa);
    CHECK(back.reducibles[i].nu == cb.reducibles[i].nu);
    CHECK(back.reducibles[i].c1_sq == cb.reducibles[i].c1_sq);
  }
  CHECK(eta_of(back) == eta_of(cb));
}
