#include "doctest.h"

#include <random>

#include "coboundary/tensor.hpp"

using namespace coboundary;

namespace {

Tensor random_matrix(std::mt19937_64& rng, std::size_t n) {
  Tensor m({n, n});
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = Scalar(static_cast<long>(rng() % 7) - 3);
  return m;
}

}  // namespace

TEST_CASE("kron index convention") {
  const Tensor a = Tensor::matrix({{1, 2}, {3, 4}});
  const Tensor b = Tensor::matrix({{0, 5}, {6, 7}});
  const Tensor c = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) CHECK(c.at(i * 2 + k, j * 2 + l) == a.at(i, j) * b.at(k, l));
}

TEST_CASE("flip swaps kron factors") {
  std::mt19937_64 rng(3);
  const Tensor p = flip_matrix(3);
  const Tensor a = random_matrix(rng, 3), b = random_matrix(rng, 3);
  CHECK(matmul(matmul(p, kron(a, b)), p) == kron(b, a));
  CHECK(matmul(p, p) == Tensor::identity(9));
}

TEST_CASE("permutation operators") {
  const PermutationOp rev = factor_reversal_operator(3, 2);
  // e_{i} (x) e_{j} (x) e_{k} -> e_{k} (x) e_{j} (x) e_{i}
  CHECK(rev.map_index(0b001) == 0b100);
  CHECK(rev.map_index(0b011) == 0b110);
  const PermutationOp cyc(2, {1, 2, 0});
  CHECK(matmul(cyc.expand(), cyc.inverse().expand()) == Tensor::identity(8));
  CHECK_THROWS(PermutationOp(2, {0, 0}));
}

TEST_CASE("determinant and inverse") {
  const Scalar q = Scalar::q();
  const Tensor m = Tensor::matrix({{q, Scalar(1)}, {Scalar(0), q.inverse()}});
  CHECK(determinant(m) == Scalar(1));
  CHECK(matmul(m, inverse(m)) == Tensor::identity(2));
  CHECK(determinant(total_permutation_matrix(3)) == Scalar(-1));
  CHECK_THROWS_AS(inverse(Tensor::matrix({{1, 2}, {2, 4}})), ArithmeticError);

  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const Tensor a = random_matrix(rng, 3), b = random_matrix(rng, 3);
    CHECK(determinant(matmul(a, b)) == determinant(a) * determinant(b));
    if (!determinant(a).is_zero()) CHECK(matmul(inverse(a), a) == Tensor::identity(3));
  }
}

TEST_CASE("solve_linear") {
  // x + y + z = 1, x - y = 0: one free variable
  const std::vector<std::vector<Scalar>> a{{1, 1, 1}, {1, -1, 0}};
  const auto sol = solve_linear(a, {Scalar(1), Scalar(0)});
  REQUIRE(sol.consistent);
  CHECK(sol.rank == 2);
  REQUIRE(sol.nullspace.size() == 1);
  for (std::size_t r = 0; r < 2; ++r) {
    Scalar lhs, hom;
    for (std::size_t j = 0; j < 3; ++j) {
      lhs += a[r][j] * sol.particular[j];
      hom += a[r][j] * sol.nullspace[0][j];
    }
    CHECK(lhs == Scalar(r == 0 ? 1 : 0));
    CHECK(hom == Scalar());
  }
  const auto bad = solve_linear(std::vector<std::vector<Scalar>>{{1, 1}, {2, 2}}, {Scalar(1), Scalar(3)});
  CHECK_FALSE(bad.consistent);
}
