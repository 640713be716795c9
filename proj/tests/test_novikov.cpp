#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "knotfloer/novikov.hpp"

using namespace knotfloer;

TEST_CASE("finite-sum ring arithmetic") {
  Rational a = make_q(1, 6);
  // (1 - l^{4a-1}T^4)(1 + l^{4a-1}T^4) = 1 - l^{2(4a-1)}T^8
  NovikovElement minus = NovikovElement::one(a);
  minus.set_term(4 * a - 1, 4, Rational(-1));
  NovikovElement plus = NovikovElement::one(a);
  plus.set_term(4 * a - 1, 4, Rational(1));
  NovikovElement expect = NovikovElement::one(a);
  expect.set_term(2 * (4 * a - 1), 8, Rational(-1));
  CHECK(minus * plus == expect);

  // xi * xi = xi^2 with xi = l^{2a}T^2
  NovikovElement xi = NovikovElement::monomial(a, Rational(1), 2 * a, 2);
  NovikovElement xi2 = NovikovElement::monomial(a, Rational(1), 4 * a, 4);
  CHECK(xi * xi == xi2);

  CHECK(xi + NovikovElement::zero(a) == xi);
  CHECK_THROWS_AS(xi + NovikovElement::one(make_q(1, 5)), AlphaMismatch);
}

TEST_CASE("unit inversion by geometric series") {
  Rational a = make_q(1, 6);
  NovikovElement x = NovikovElement::one(a);
  x.set_term(make_q(-1, 3), 4, Rational(-1));  // 1 - l^{-1/3} T^4
  NovikovElement inv = x.invert_unit(3);
  NovikovElement expect = NovikovElement::one(a);
  expect.set_term(make_q(-1, 3), 4, Rational(1));
  expect.set_term(make_q(-2, 3), 8, Rational(1));
  expect.set_term(Rational(-1), 12, Rational(1));
  CHECK(inv.terms() == expect.terms());
  CHECK(inv.truncated());

  // x * inv = 1 + terms below the truncation
  NovikovElement prod = x * inv;
  CHECK(prod.coeff(Rational(0), 0) == 1);
  for (auto& [k, c] : prod.terms()) {
    if (k == std::make_pair(0L, 0L)) continue;
    CHECK(prod.lambda_exponent(k) < -1);  // only the dropped tail remains
  }

  // monomial inverse is exact
  NovikovElement mono = NovikovElement::monomial(a, Rational(1), make_q(2, 3), 5);
  NovikovElement minv = mono.invert_unit(10);
  CHECK_FALSE(minv.truncated());
  CHECK(mono * minv == NovikovElement::one(a));

  // 1 - T^4 at alpha = 1/4 has no strictly leading term
  NovikovElement bad = NovikovElement::one(make_q(1, 4));
  bad.set_term(Rational(0), 4, Rational(-1));
  CHECK_THROWS_AS(bad.invert_unit(3), NotAUnit);

  // leading coefficient +-2 is rejected
  NovikovElement two = NovikovElement::monomial(a, Rational(2), Rational(0), 0);
  two.set_term(make_q(-1, 3), 4, Rational(1));
  CHECK_THROWS_AS(two.invert_unit(3), NotAUnit);
}

TEST_CASE("eta elements of model cobordisms") {
  NovikovElement e6 = eta_alpha(EtaKind::crossing_blowup, make_q(1, 6));
  CHECK(e6.coeff(Rational(0), 0) == 1);
  CHECK(e6.coeff(make_q(-1, 3), 4) == -1);
  CHECK(e6.term_count() == 2);

  CHECK(eta_alpha(EtaKind::negative_twist, make_q(1, 5)) ==
        NovikovElement::one(make_q(1, 5)));

  NovikovElement e3 = eta_alpha(EtaKind::crossing_blowup, make_q(1, 3));
  CHECK(e3.coeff(make_q(-1, 3), -4) == 1);
  CHECK(e3.coeff(Rational(0), 0) == -1);

  // positive twist names the same blow-up branch
  CHECK(eta_alpha(EtaKind::positive_twist, make_q(1, 6)) == e6);
}

TEST_CASE("bigrading operators") {
  Rational a = make_q(1, 4);
  BiGrading g{1, make_q(3, 2)};
  BiGrading gz = apply_operator(GradingOp::Z, g, a);
  CHECK(gz.deg_z == 1);
  CHECK(gz.deg_r == g.deg_r);  // 1 - 4 alpha = 0 at alpha = 1/4

  Rational a6 = make_q(1, 6);
  BiGrading gu = g;
  for (int i = 0; i < 3; ++i) gu = apply_operator(GradingOp::U, gu, a6);
  CHECK(gu.deg_z == g.deg_z + 12);
  CHECK(gu.deg_r == g.deg_r + 3 * (2 * a6));

  BiGrading round = apply_operator(
      GradingOp::Zinv, apply_operator(GradingOp::Z, g, a6), a6);
  CHECK(round == g);

  // lambda = Z U^2: deg_r gains (1-4a) + 4a = 1, deg_z gains 8
  BiGrading l = apply_operator(
      GradingOp::U,
      apply_operator(GradingOp::U, apply_operator(GradingOp::Z, g, a6), a6), a6);
  CHECK(l.deg_r == g.deg_r + 1);
  CHECK(l.deg_z == g.deg_z + 8);
}

TEST_CASE("function field embedding on samples") {
  Rational a = make_q(1, 6);  // D = 3
  NovikovElement lam13 = NovikovElement::monomial(a, Rational(1), make_q(1, 3), 0);
  CHECK(to_function_field(lam13) == parse_ff("s"));

  NovikovElement e = eta_alpha(EtaKind::crossing_blowup, a);
  CHECK(to_function_field(e) == parse_ff("(s - T^4)/(s)"));

  NovikovElement xi = NovikovElement::monomial(a, Rational(1), 2 * a, 2);
  CHECK(to_function_field(xi) == parse_ff("s*T^2"));

  NovikovElement trunc = e.invert_unit(2);
  CHECK_THROWS_AS(to_function_field(trunc), Truncated);
}

TEST_CASE("function field embedding is a ring homomorphism") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<long> rnum(-6, 6);
  std::uniform_int_distribution<long> jexp(-4, 4);
  Rational a = make_q(1, 6);
  long d = exponent_denominator(a);
  for (int it = 0; it < 200; ++it) {
    NovikovElement x(a), y(a);
    for (int k = 0; k < 4; ++k) {
      x.set_term(make_q(rnum(rng), d), jexp(rng), Rational(coeff(rng)));
      y.set_term(make_q(rnum(rng), d), jexp(rng), Rational(coeff(rng)));
    }
    CHECK(to_function_field(x + y) ==
          to_function_field(x) + to_function_field(y));
    CHECK(to_function_field(x * y) ==
          to_function_field(x) * to_function_field(y));
  }
}

TEST_CASE("rendering uses exact rational exponents") {
  NovikovElement e = eta_alpha(EtaKind::crossing_blowup, make_q(1, 6));
  CHECK(e.str() == "1 - l^{-1/3}*T^{4}");
}
