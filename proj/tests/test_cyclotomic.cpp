#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "knotfloer/cyclotomic.hpp"

using namespace knotfloer;

TEST_CASE("root_of_unity at sample parameters") {
  // e^{4 pi i / 4} = e^{pi i} = -1
  CHECK(root_of_unity(make_q(1, 4)) == CyclotomicNumber(-1));
  CHECK(root_of_unity(Rational(0)) == CyclotomicNumber(1));
  // e^{4 pi i / 12} = e^{pi i / 3}, a primitive 6th root
  CHECK(root_of_unity(make_q(1, 12)) == CyclotomicNumber::root(6, 1));
}

TEST_CASE("root_of_unity order equals denominator of 2 alpha") {
  for (long d = 2; d <= 24; ++d)
    for (long n = 1; 2 * n <= d; ++n) {
      if (std::gcd(n, d) != 1) continue;
      Rational alpha = make_q(n, d);
      CyclotomicNumber w = root_of_unity(alpha);
      long expected = exponent_denominator(alpha);
      // w^expected = 1, and no smaller power is
      CyclotomicNumber pw = w;
      long order = 1;
      while (pw != CyclotomicNumber(1)) {
        pw = pw * w;
        ++order;
        REQUIRE(order <= expected);
      }
      CHECK(order == expected);
    }
}

TEST_CASE("ring operations on sample values") {
  CyclotomicNumber z3 = CyclotomicNumber::root(3, 1);
  CHECK(z3 + z3 * z3 == CyclotomicNumber(-1));
  CyclotomicNumber z4 = CyclotomicNumber::root(4, 1);
  CHECK(z4 * z4 == CyclotomicNumber(-1));
  CyclotomicNumber z6 = CyclotomicNumber::root(6, 1);
  CHECK((z6 - z6).is_zero());
}

TEST_CASE("conjugation is an involutive ring homomorphism") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::uniform_int_distribution<long> ord(2, 30);
  for (int it = 0; it < 40; ++it) {
    long n = ord(rng), m = ord(rng);
    CyclotomicNumber x, y;
    for (int k = 0; k < 4; ++k) {
      x = x + Rational(coeff(rng)) * CyclotomicNumber::root(n, coeff(rng) + 5);
      y = y + Rational(coeff(rng)) * CyclotomicNumber::root(m, coeff(rng) + 5);
    }
    CHECK(x.conj().conj() == x);
    CHECK((x + y).conj() == x.conj() + y.conj());
    CHECK((x * y).conj() == x.conj() * y.conj());
  }
}

TEST_CASE("sign_real on sample values") {
  CyclotomicNumber z3 = CyclotomicNumber::root(3, 1);
  CHECK(sign_real(z3 + z3 * z3) == -1);
  CHECK(sign_real(CyclotomicNumber()) == 0);
  // 2 cos(72 degrees) > 0
  CyclotomicNumber z5 = CyclotomicNumber::root(5, 1);
  CHECK(sign_real(z5 + z5.conj()) == 1);
}

TEST_CASE("sign_real rejects non-real input") {
  CHECK_THROWS_AS(sign_real(CyclotomicNumber::root(5, 1)), NotReal);
}

TEST_CASE("sign_real is multiplicative on random real elements") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::uniform_int_distribution<long> ord(2, 40);
  for (int it = 0; it < 60; ++it) {
    long n = ord(rng);
    CyclotomicNumber a, b;
    for (int k = 0; k < 3; ++k) {
      a = a + Rational(coeff(rng)) * CyclotomicNumber::root(n, coeff(rng) + 4);
      b = b + Rational(coeff(rng)) * CyclotomicNumber::root(n, coeff(rng) + 4);
    }
    CyclotomicNumber x = a + a.conj();
    CyclotomicNumber y = b + b.conj();
    REQUIRE(x.is_real());
    REQUIRE(y.is_real());
    CHECK(sign_real(x * y) == sign_real(x) * sign_real(y));
  }
}

TEST_CASE("inverse via extended gcd") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (int it = 0; it < 30; ++it) {
    long n = 5 + (it % 20);
    CyclotomicNumber x;
    for (int k = 0; k < 3; ++k)
      x = x + Rational(coeff(rng)) * CyclotomicNumber::root(n, coeff(rng) + 4);
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == CyclotomicNumber(1));
  }
}

TEST_CASE("canonical reduction is idempotent and lifting preserves values") {
  CyclotomicNumber z12 = CyclotomicNumber::root(12, 2);  // = zeta_6
  CHECK(z12 == CyclotomicNumber::root(6, 1));
  CyclotomicNumber z = CyclotomicNumber::root(6, 1).lift(12);
  CHECK(z == CyclotomicNumber::root(6, 1));
}
