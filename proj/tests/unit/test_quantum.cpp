#include "doctest.h"

#include "coboundary/quantum.hpp"

using namespace coboundary;

namespace {

Tensor unit(std::size_t n, std::size_t i, std::size_t j) {
  Tensor t = Tensor::zeros({n, n});
  t.at(i, j) = Scalar(1);
  return t;
}

// Textbook construction from matrix units.
Tensor explicit_R(std::size_t n) {
  const Scalar q = Scalar::q();
  Tensor r = Tensor::zeros({n * n, n * n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Tensor d = kron(unit(n, i, i), unit(n, j, j));
      r += i == j ? d * q : d;
      if (i < j) r += kron(unit(n, i, j), unit(n, j, i)) * (q - Scalar::q_power(-1));
    }
  return r;
}

std::size_t flat(std::initializer_list<std::size_t> idx, std::size_t n) {
  std::size_t f = 0;
  for (auto x : idx) f = f * n + x;
  return f;
}

bool all_subchecks_pass(const CheckReport& rep) {
  for (const auto& s : rep.subchecks)
    if (s["status"] == "fail") return false;
  return true;
}

}  // namespace

TEST_CASE("standard R matches the matrix-unit formula") {
  for (std::size_t n : {2, 3, 4}) {
    const RMatrixData d = standard_R(n);
    CHECK(d.R == explicit_R(n));
    const Tensor p = flip_matrix(n);
    CHECK(d.R_tilde == matmul(matmul(p, d.R), p));
    CHECK(d.intertwiner == matmul(d.R, p));
  }
  CHECK_THROWS_AS(standard_R(1), UsageError);
}

TEST_CASE("braid form satisfies the Hecke relation") {
  for (std::size_t n : {2, 3}) {
    const Tensor rr = matmul(flip_matrix(n), standard_R(n).R);
    const Tensor id = Tensor::identity(n * n);
    const Tensor lhs = matmul(rr - id * Scalar::q(), rr + id * Scalar::q_power(-1));
    CHECK(lhs.is_zero());
  }
}

TEST_CASE("QYBE") {
  for (std::size_t n : {2, 3, 4}) {
    CHECK(satisfies_qybe(standard_R(n).R, n));
    CHECK(check_qybe(n).passed());
  }
  // Doubling the off-diagonal term breaks it.
  Tensor bad = standard_R(2).R;
  bad.at(1, 2) *= Scalar(2);
  CHECK_FALSE(satisfies_qybe(bad, 2));
  CHECK(satisfies_qybe(Tensor::identity(4), 2));
}

TEST_CASE("inversion counts") {
  CHECK(inversions({0, 1, 2}) == 0);
  CHECK(inversions({1, 0, 2}) == 1);
  CHECK(inversions({2, 1, 0}) == 3);
  CHECK(inversions({3, 2, 1, 0}) == 6);
}

TEST_CASE("volume element values") {
  const Scalar q = Scalar::q();
  const VolumeElement v2 = volume_element(2);
  CHECK(v2.E[flat({0, 1}, 2)] == Scalar(1));
  CHECK(v2.E[flat({1, 0}, 2)] == -q);
  CHECK(v2.E_tilde[flat({0, 1}, 2)] == -q);
  CHECK(v2.E[flat({0, 0}, 2)].is_zero());

  const VolumeElement v3 = volume_element(3);
  CHECK(v3.E[flat({1, 0, 2}, 3)] == -q);
  CHECK(v3.E[flat({2, 1, 0}, 3)] == -(q * q * q));
  CHECK(v3.E_tilde[flat({0, 1, 2}, 3)] == -(q * q * q));
  CHECK(v3.E[flat({0, 0, 1}, 3)].is_zero());
  CHECK(check_volume_element(2).passed());
  CHECK(check_volume_element(3).passed());
}

TEST_CASE("algebra relations are nonempty") {
  const auto gens = quantum_generators(2);
  CHECK_FALSE(relations_suq(2, gens).size() == 0);
  CHECK_FALSE(relations_B(2, gens).size() == 0);
}

TEST_CASE("epsilon-twisted antidiagonal intertwines R and R~") {
  CHECK(check_eq22(2).passed());
  CHECK(check_eq22(3).passed());
  const CheckReport bad = check_eq22(2, G0Choice::identity);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("quantum gauge certification replays") {
  const CheckReport rep = check_quantum_gauge(2, 6, true);
  CHECK(rep.passed());
  REQUIRE(rep.subchecks.size() == 3);
  CHECK(all_subchecks_pass(rep));
  CHECK(rep.subchecks[1]["name"] == "certificates replay exactly");
  CHECK_FALSE(rep.subchecks[2]["detail"]["uncertified_entries"].empty());
}

TEST_CASE("FRT, inverse volume and derived relations at n = 2") {
  CHECK(check_eq17_frt(2, 6).passed());
  CHECK(check_inverse_volume(2, 6).passed());
  CHECK(check_eq18_derive(2, 6).passed());
}

TEST_CASE("isomorphism at n = 2") {
  const CheckReport rep = check_isomorphism(2, 6);
  CHECK(rep.passed());
  CHECK(all_subchecks_pass(rep));
}
