#include "doctest.h"

#include <random>

#include "coboundary/scalar.hpp"

using namespace coboundary;

namespace {

// Random element of Q(zeta_12)(q) built from small integers.
Scalar random_scalar(std::mt19937_64& rng) {
  auto small = [&] { return static_cast<long>(rng() % 5) - 2; };
  Scalar num;
  Scalar den(1);
  for (int k = 0; k < 3; ++k) num += Scalar(small()) * Scalar::zeta(12, small()) * Scalar::q_power(k);
  if (rng() % 2) den += Scalar(small()) * Scalar::q();
  if (den.is_zero()) den = Scalar(1);
  return num / den;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(7) == 6);
}

TEST_CASE("roots of unity") {
  const auto z4 = CycloRational::root_of_unity(4, 1);
  CHECK(z4 * z4 == CycloRational(-1));
  const auto z6 = CycloRational::root_of_unity(6, 1);
  CHECK(z6 * z6 * z6 == CycloRational(-1));
  // zeta_6 = zeta_3 + 1
  CHECK(z6 == CycloRational::root_of_unity(3, 1) + CycloRational(1));
  const auto z8 = CycloRational::root_of_unity(8, 1);
  CHECK(z8 * z8 == z4);
  CHECK(z4 + z6 - z4 == z6);
  CHECK((z4 * z6).inverse() * z4 * z6 == CycloRational(1));
  CHECK(z4.conjugate() == -z4);
  CHECK((z6 + CycloRational(2)).conjugate() * (z6 + CycloRational(2)) == CycloRational(7));
}

TEST_CASE("scalar canonical form") {
  const Scalar q = Scalar::q();
  const Scalar a = (Scalar(1) - q * q) / q;
  CHECK(a.to_string() == "(1 - q^2)/(q)");
  CHECK((q - q.inverse()) == a * Scalar(-1));
  CHECK(((q * q - Scalar(1)) / (q - Scalar(1))) == q + Scalar(1));
  CHECK(Scalar::zeta(4).to_string() == "z4^1");
  CHECK(Scalar::fraction(6, -4).to_string() == "-3/2");
  CHECK(Scalar::q_power(-2) * Scalar::q_power(2) == Scalar(1));
  CHECK((q + Scalar(1)).pow(3) == q * q * q + Scalar(3) * q * q + Scalar(3) * q + Scalar(1));
  CHECK_THROWS_AS(Scalar().inverse(), ArithmeticError);
  CHECK_FALSE(checked_divide(Scalar(1), Scalar()).has_value());
}

TEST_CASE("scalar at q = 1") {
  const Scalar q = Scalar::q();
  CHECK((q * q - Scalar(1)) / (q - Scalar(1)) == q + Scalar(1));
  CHECK(((q + Scalar(3)) / (q + Scalar(1))).at_q_equals_one() == CycloRational(2));
  CHECK_THROWS_AS((Scalar(1) / (q - Scalar(1))).at_q_equals_one(), ArithmeticError);
}

TEST_CASE("scalar parse round trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Scalar s = random_scalar(rng);
    CAPTURE(s.to_string());
    CHECK(Scalar::parse(s.to_string()) == s);
  }
  CHECK(Scalar::parse("q^-1 - q") == (Scalar(1) - Scalar::q().pow(2)) / Scalar::q());
  CHECK(Scalar::parse("(z4^1 + 2)*q^(2)") == (Scalar::zeta(4) + Scalar(2)) * Scalar::q_power(2));
}

TEST_CASE("scalar field axioms on random samples") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Scalar());
    if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
  }
}

TEST_CASE("epsilon") {
  for (int n = 1; n <= 6; ++n) {
    const long half = static_cast<long>(n) * (n - 1) / 2;
    CHECK(epsilon_for(n).pow(n) == Scalar(half % 2 == 0 ? 1 : -1));
  }
  CHECK(epsilon_for(2) == Scalar::zeta(4));
  CHECK(epsilon_for(3) == Scalar::zeta(6));
  CHECK(epsilon_for(4) == Scalar(1));
}
