#include "doctest.h"

#include <optional>
#include <random>

#include "coboundary/classical.hpp"

using namespace coboundary;

namespace {

Tensor elementary(std::size_t n, std::size_t a) {
  Tensor t = Tensor::zeros({n, n});
  t[a] = Scalar(1);
  return t;
}

Tensor commutator(const Tensor& a, const Tensor& b) { return matmul(a, b) - matmul(b, a); }

// r as an n^2 x n^2 matrix in Mat(n) (x) Mat(n).
Tensor as_kron(const Bivector& r) {
  const std::size_t n = r.basis()->n(), N = n * n;
  Tensor out = Tensor::zeros({N, N});
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      if (!r.at(a, b).is_zero()) out += kron(elementary(n, a), elementary(n, b)) * r.at(a, b);
  return out;
}

// Component ((i,j),(k,l)) of a Kronecker-form element is entry (i*n+k, j*n+l).
Tensor kron_to_components(const Tensor& m, std::size_t n) {
  const std::size_t N = n * n;
  Tensor c = Tensor::zeros({N, N});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) c.at(i * n + j, k * n + l) = m.at(i * n + k, j * n + l);
  return c;
}

// [r12,r13] + [r12,r23] + [r13,r23] with explicit Kronecker products.
Tensor cybe_oracle(const Bivector& r) {
  const std::size_t n = r.basis()->n();
  const Tensor rk = as_kron(r);
  const Tensor id = Tensor::identity(n);
  const Tensor r12 = kron(rk, id), r23 = kron(id, rk);
  const Tensor p23 = kron(id, flip_matrix(n));
  const Tensor r13 = matmul(matmul(p23, r12), p23);
  return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23);
}

Tensor trivector_as_kron(const Trivector& t) {
  const std::size_t n = t.basis()->n(), N = n * n;
  Tensor out = Tensor::zeros({N * n, N * n});
  const Tensor& c = t.components();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c[k].is_zero())
      out += kron(kron(elementary(n, k / (N * N)), elementary(n, (k / N) % N)), elementary(n, k % N)) * c[k];
  return out;
}

Bivector random_bivector(std::size_t n, std::mt19937_64& rng) {
  const auto basis = LieBasis::gl(n);
  const std::size_t N = basis->dim();
  Tensor c = Tensor::zeros({N, N});
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b) {
      const Scalar v(static_cast<long>(rng() % 5) - 2);
      c.at(a, b) = v;
      c.at(b, a) = -v;
    }
  return Bivector(basis, c);
}

}  // namespace

TEST_CASE("gl(n) basis brackets") {
  const LieBasis b(3);
  CHECK(b.dim() == 9);
  CHECK(b.label(b.index(0, 1)) == "e1^2");
  // [e1^2, e2^1] = e1^1 - e2^2
  const auto& br = b.bracket(b.index(0, 1), b.index(1, 0));
  REQUIRE(br.size() == 2);
  CHECK(br[0] == std::pair<std::size_t, long>{b.index(0, 0), 1});
  CHECK(br[1] == std::pair<std::size_t, long>{b.index(1, 1), -1});
}

TEST_CASE("standard r components") {
  const Bivector r2 = standard_r(2);
  const auto& b = *r2.basis();
  CHECK(r2.at(b.index(0, 1), b.index(1, 0)) == Scalar(1));
  CHECK(r2.at(b.index(1, 0), b.index(0, 1)) == Scalar(-1));
  std::size_t nonzero = 0;
  for (const auto& v : r2.components().entries()) nonzero += !v.is_zero();
  CHECK(nonzero == 2);

  const Bivector r3 = standard_r(3);
  nonzero = 0;
  for (const auto& v : r3.components().entries()) nonzero += !v.is_zero();
  CHECK(nonzero == 6);
  const auto& b3 = *r3.basis();
  for (auto [j, k] : {std::pair{0, 1}, {0, 2}, {1, 2}}) CHECK(r3.at(b3.index(j, k), b3.index(k, j)) == Scalar(1));

  CHECK_THROWS_AS(standard_r(1), UsageError);
}

TEST_CASE("bivector rejects non-antisymmetric components") {
  const auto basis = LieBasis::gl(2);
  Tensor c = Tensor::zeros({4, 4});
  c.at(0, 1) = Scalar(1);
  CHECK_THROWS_AS(Bivector(basis, c), std::invalid_argument);
  c.at(1, 0) = Scalar(-1);
  CHECK_NOTHROW(Bivector(basis, c));
  c.at(2, 2) = Scalar(1);
  CHECK_THROWS_AS(Bivector(basis, c), std::invalid_argument);
}

TEST_CASE("schouten square matches the Kronecker oracle") {
  for (std::size_t n : {2, 3}) {
    const Bivector r = standard_r(n);
    const Trivector t = schouten_square(r);
    CHECK_FALSE(t.is_zero());
    CHECK(trivector_as_kron(t) == cybe_oracle(r));
  }
  std::mt19937_64 rng(3);
  for (int k = 0; k < 3; ++k) {
    const Bivector r = random_bivector(2, rng);
    CHECK(trivector_as_kron(schouten_square(r)) == cybe_oracle(r));
  }
}

TEST_CASE("schouten square scaling and zero") {
  const Bivector r = standard_r(2);
  CHECK(schouten_square(Bivector::zero(r.basis())).is_zero());
  const Tensor t1 = schouten_square(r).components();
  const Tensor t2 = schouten_square(Scalar(2) * r).components();
  CHECK(t2 == t1 * Scalar(4));
}

TEST_CASE("ad-invariance") {
  CHECK(is_ad_invariant(schouten_square(standard_r(2))));
  CHECK(is_ad_invariant(schouten_square(standard_r(3))));
  const auto basis = LieBasis::gl(2);
  CHECK(is_ad_invariant(Trivector(basis, Tensor::zeros({4, 4, 4}))));
  const Trivector probe = Trivector::wedge(basis, basis->index(0, 0), basis->index(0, 1), basis->index(1, 0));
  const auto bad = ad_invariance_violation(probe);
  REQUIRE(bad.has_value());
  CHECK(basis->label(bad->x) == "e1^2");
  CHECK_FALSE(bad->value.is_zero());
}

TEST_CASE("pi at the identity and at the translation point") {
  for (std::size_t n : {2, 3}) {
    const Bivector r = standard_r(n);
    CHECK(pi_minus(r, Tensor::identity(n)).components.is_zero());
    const Tensor g0 = total_permutation_matrix(n) * epsilon_for(static_cast<int>(n));
    CHECK(pi_plus(r, g0).components.is_zero());
  }
  CHECK_THROWS_AS(pi_minus(standard_r(2), Tensor::zeros({2, 2})), ArithmeticError);
}

TEST_CASE("pi_minus matches direct expansion") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2, 3}) {
    const Bivector r = standard_r(n);
    const std::size_t N = n * n;
    SampleStream s(n, 5);
    for (int k = 0; k < 3; ++k) {
      const Tensor g = s.next_invertible();
      Tensor expect = Tensor::zeros({N, N});
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          if (r.at(a, b).is_zero()) continue;
          const Tensor xa = elementary(n, a), xb = elementary(n, b);
          expect += (kron(matmul(xa, g), matmul(xb, g)) - kron(matmul(g, xa), matmul(g, xb))) * r.at(a, b);
        }
      const PointBivector p = pi_minus(r, g);
      CHECK(p.components == kron_to_components(expect, n));
      CHECK(p.is_antisymmetric());
      CHECK(pi_plus(r, g).is_antisymmetric());
    }
    // Linear in r.
    const Bivector a = random_bivector(n, rng), b = random_bivector(n, rng);
    const Tensor g = s.next_invertible();
    CHECK(pi_minus(a + b, g).components == pi_minus(a, g).components + pi_minus(b, g).components);
  }
}

TEST_CASE("sample stream is deterministic and bounded") {
  SampleStream a(3, 42), b(3, 42);
  for (int k = 0; k < 5; ++k) {
    const Tensor x = a.next_invertible();
    CHECK(x == b.next_invertible());
    CHECK_FALSE(determinant(x).is_zero());
    for (const auto& v : x.entries()) {
      const Rational q = v.rational_value();
      CHECK(q >= -3);
      CHECK(q <= 3);
    }
  }
}

TEST_CASE("multiplicativity and antipode") {
  for (std::size_t n : {2, 3}) {
    const Bivector r = standard_r(n);
    SampleStream s(n, 7);
    CHECK(check_multiplicativity(r, {{Tensor::identity(n), Tensor::identity(n)}}).passed());
    CHECK(check_multiplicativity(r, s.pairs(10)).passed());
    CHECK(check_antipode(r, {Tensor::identity(n)}).passed());
    CHECK(check_antipode(r, s.points(5)).passed());
  }
}

TEST_CASE("gauge identities") {
  const Bivector r = standard_r(2);
  const Tensor e = Tensor::identity(2);
  CHECK(check_gauge_identity(r, Scalar(2) * r, {{e, e, e}}).passed());
  for (std::size_t n : {2, 3}) {
    const Bivector rn = standard_r(n);
    SampleStream s(n, 9);
    CHECK(check_gauge_identity(rn, Scalar(2) * rn, s.triples(10)).passed());
  }
  // Arbitrary offsets: the left identity survives, the right one does not.
  SampleStream s(2, 13);
  for (int k = 0; k < 5; ++k) {
    const Bivector A = s.next_bivector(r.basis());
    const CheckReport rep = check_gauge_identity(r, A, s.triples(5));
    CHECK(rep.subchecks[1]["status"] == "pass");
    CHECK(rep.subchecks[2]["status"] == "fail");
    CHECK_FALSE(rep.witnesses.empty());
  }
}

TEST_CASE("translation structure") {
  for (std::size_t n : {2, 3}) {
    const Bivector r = standard_r(n);
    SampleStream s(n, 17);
    const Tensor g0 = total_permutation_matrix(n) * epsilon_for(static_cast<int>(n));
    CHECK(check_translation(r, g0, s.points(10)).passed());
    const CheckReport bad = check_translation(r, Tensor::identity(n), s.points(2));
    CHECK(bad.subchecks[0]["status"] == "fail");
  }
}

TEST_CASE("symbolic identities for n = 2") {
  const Bivector r = standard_r(2);
  const auto res = symbolic_identities(r, total_permutation_matrix(2) * epsilon_for(2));
  CHECK(res.size() == 6);
  for (const auto& s : res) {
    INFO(s.identity << " " << s.witness);
    CHECK(s.holds);
  }
  // A wrong translation point breaks the last one.
  const auto wrong = symbolic_identities(r, Tensor::identity(2));
  CHECK_FALSE(wrong.back().holds);
  CHECK_FALSE(wrong.back().witness.empty());
}

TEST_CASE("poisson bracket") {
  const Bivector r = standard_r(2);
  const MPoly x0 = MPoly::variable(0), x1 = MPoly::variable(1), x2 = MPoly::variable(2), x3 = MPoly::variable(3);
  const MPoly f = x0 * x3 - x1 * x2 + MPoly(Scalar::fraction(1, 2)) * x1;
  CHECK(poisson_bracket(r, f, f).is_zero());
  // {x_a, x_b} is the (a, b) component of pi at the coordinate matrix.
  CHECK(poisson_bracket(r, x0, x1) == -poisson_bracket(r, x1, x0));

  std::mt19937_64 rng(5);
  auto random_poly = [&] {
    MPoly p;
    for (int t = 0; t < 3; ++t) {
      MPoly m(static_cast<long>(rng() % 5) - 2);
      for (int d = 0; d < 2; ++d) m *= MPoly::variable(rng() % 4);
      p += m;
    }
    return p;
  };
  for (int k = 0; k < 5; ++k) {
    const MPoly a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(poisson_bracket(r, a * b, c) == a * poisson_bracket(r, b, c) + poisson_bracket(r, a, c) * b);
  }
}

TEST_CASE("jacobi identity tracks ad-invariance") {
  CHECK(jacobi_check(standard_r(2)).passed());
  const auto basis = LieBasis::gl(2);
  // First basis wedge whose Schouten square is not ad-invariant.
  std::optional<Bivector> found;
  for (std::size_t a = 0; a < 4 && !found; ++a)
    for (std::size_t b = a + 1; b < 4 && !found; ++b) {
      Bivector w = Bivector::wedge(basis, a, b) + standard_r(2);
      if (!is_ad_invariant(schouten_square(w))) found = w;
    }
  REQUIRE(found.has_value());
  const Bivector bad = *found;
  const CheckReport rep = jacobi_check(bad);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.witnesses.empty());
}

TEST_CASE("commutative polynomials") {
  const MPoly x = MPoly::variable(0), y = MPoly::variable(1);
  const MPoly p = x * x * y - MPoly(3) * y + MPoly(1);
  CHECK(p.total_degree() == 3);
  CHECK(p.derivative(0) == MPoly(2) * x * y);
  CHECK(p.derivative(1) == x * x - MPoly(3));
  CHECK(p.derivative(2).is_zero());
  CHECK(p.evaluate({Scalar(2), Scalar(5)}) == Scalar(6));
  CHECK(x * y == y * x);
  CHECK((p - p).is_zero());
}

TEST_CASE("rational solutions by elimination") {
  const MPoly x = MPoly::variable(0), y = MPoly::variable(1);
  auto s1 = rational_solutions({x * x - MPoly(1)}, 1);
  REQUIRE(s1.has_value());
  CHECK(*s1 == std::vector<std::vector<Rational>>{{Rational(-1)}, {Rational(1)}});
  auto none = rational_solutions({x * x - MPoly(2)}, 1);
  REQUIRE(none.has_value());
  CHECK(none->empty());
  auto s2 = rational_solutions({x * y - MPoly(2), x - y - MPoly(1)}, 2);
  REQUIRE(s2.has_value());
  CHECK(*s2 == std::vector<std::vector<Rational>>{{Rational(-1), Rational(-2)}, {Rational(2), Rational(1)}});
  auto half = rational_solutions({MPoly(2) * x - MPoly(1), y * y - x * y}, 2);
  REQUIRE(half.has_value());
  CHECK(half->size() == 2);
  CHECK_FALSE(rational_solutions({x * y}, 2).has_value());
  CHECK_FALSE(rational_solutions({MPoly(Scalar::q()) * x - MPoly(1)}, 1).has_value());
}
