#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "coboundary/mpoly.hpp"
#include "coboundary/report.hpp"
#include "coboundary/tensor.hpp"

namespace coboundary {

/// gl(n) with basis e_i^j (1 at row i, column j), flat index a = i*n + j.
class LieBasis {
 public:
  /// Builds the structure constants from matrix commutators and checks them
  /// against [e_i^j, e_k^l] = d_jk e_i^l - d_li e_k^j.
  explicit LieBasis(std::size_t n);
  static std::shared_ptr<const LieBasis> gl(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return n_ * n_; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_ + j; }
  std::pair<std::size_t, std::size_t> position(std::size_t a) const { return {a / n_, a % n_}; }
  Tensor element(std::size_t a) const;
  /// [X_a, X_b] as sparse (c, coefficient) pairs.
  const std::vector<std::pair<std::size_t, long>>& bracket(std::size_t a, std::size_t b) const {
    return brackets_[a * dim() + b];
  }
  /// "e1^2" (1-based).
  std::string label(std::size_t a) const;

 private:
  std::size_t n_;
  std::vector<std::vector<std::pair<std::size_t, long>>> brackets_;
};

using LieBasisPtr = std::shared_ptr<const LieBasis>;

/// Antisymmetric element of g (x) g; components c^{ab} in an N x N tensor.
class Bivector {
 public:
  /// Throws std::invalid_argument unless the components are N x N and antisymmetric.
  Bivector(LieBasisPtr basis, Tensor components);
  static Bivector zero(LieBasisPtr basis);
  /// x (x) y - y (x) x for basis indices.
  static Bivector wedge(LieBasisPtr basis, std::size_t a, std::size_t b);

  const LieBasisPtr& basis() const { return basis_; }
  const Tensor& components() const { return c_; }
  const Scalar& at(std::size_t a, std::size_t b) const { return c_.at(a, b); }
  bool is_zero() const { return c_.is_zero(); }

  Bivector operator-() const { return Bivector(basis_, -c_); }
  friend Bivector operator+(const Bivector& a, const Bivector& b);
  friend Bivector operator-(const Bivector& a, const Bivector& b) { return a + (-b); }
  friend Bivector operator*(const Scalar& s, const Bivector& a) { return Bivector(a.basis_, a.c_ * s); }
  friend bool operator==(const Bivector& a, const Bivector& b) { return a.c_ == b.c_; }

 private:
  LieBasisPtr basis_;
  Tensor c_;
};

/// Totally antisymmetric element of g (x) g (x) g.
class Trivector {
 public:
  Trivector(LieBasisPtr basis, Tensor components);
  /// Sum over permutations of sign * X_s(a) (x) X_s(b) (x) X_s(c).
  static Trivector wedge(LieBasisPtr basis, std::size_t a, std::size_t b, std::size_t c);

  const LieBasisPtr& basis() const { return basis_; }
  const Tensor& components() const { return c_; }
  bool is_zero() const { return c_.is_zero(); }
  friend bool operator==(const Trivector& a, const Trivector& b) { return a.c_ == b.c_; }

 private:
  LieBasisPtr basis_;
  Tensor c_;
};

/// sum_{j<k} e_j^k ^ e_k^j; throws UsageError for n < 2.
Bivector standard_r(std::size_t n);

/// [r12,r13] + [r12,r23] + [r13,r23], antisymmetrized.
Trivector schouten_square(const Bivector& r);

struct InvarianceViolation {
  std::size_t x = 0;
  std::array<std::size_t, 3> component{};
  Scalar value;
};

std::optional<InvarianceViolation> ad_invariance_violation(const Trivector& t);
inline bool is_ad_invariant(const Trivector& t) { return !ad_invariance_violation(t).has_value(); }

/// Bivector field value at g: element of Mat(n) (x) Mat(n), components at
/// ((i*n+j), (k*n+l)) for e_i^j (x) e_k^l.
struct PointBivector {
  Tensor base;
  Tensor components;

  bool is_antisymmetric() const;
};

/// Slot-wise right translation V (x) W -> Vh (x) Wh.
Tensor right_translate(const Tensor& components, const Tensor& h);
/// Slot-wise left translation V (x) W -> hV (x) hW.
Tensor left_translate(const Tensor& components, const Tensor& h);

/// rg - gr; throws ArithmeticError for singular g.
PointBivector pi_minus(const Bivector& r, const Tensor& g);
/// rg + gr.
PointBivector pi_plus(const Bivector& r, const Tensor& g);

/// Invertible integer matrices with entries in [-3, 3] from a seeded mt19937_64.
class SampleStream {
 public:
  SampleStream(std::size_t n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Tensor next_invertible();
  /// Antisymmetric bivector with integer components in [-3, 3].
  Bivector next_bivector(const LieBasisPtr& basis);
  std::vector<Tensor> points(std::size_t count);
  std::vector<std::pair<Tensor, Tensor>> pairs(std::size_t count);
  std::vector<std::array<Tensor, 3>> triples(std::size_t count);

 private:
  long next_entry();
  std::size_t n_;
  std::mt19937_64 rng_;
};

CheckReport check_schouten(std::size_t n);
CheckReport check_multiplicativity(const Bivector& r, const std::vector<std::pair<Tensor, Tensor>>& samples);
CheckReport check_antipode(const Bivector& r, const std::vector<Tensor>& samples);
/// The three-point identity and its two specializations for rho(g) = pi(g) + g.offset.
CheckReport check_gauge_identity(const Bivector& r, const Bivector& rho_offset,
                                 const std::vector<std::array<Tensor, 3>>& samples);
/// (a) g0 r g0^-1 = -r, (b) pi_plus(g0) = 0, (c) pi(g g0) = pi_plus(g) g0.
CheckReport check_translation(const Bivector& r, const Tensor& g0, const std::vector<Tensor>& samples);

/// Polynomial versions of the identities with symbolic matrix entries.
struct SymbolicResult {
  std::string identity;
  bool holds = false;
  std::string witness;
};
std::vector<SymbolicResult> symbolic_identities(const Bivector& r, const Tensor& g0);

/// Coordinate x_{ij} of the matrix entry (i, j) is MPoly::variable(i*n + j).
MPoly poisson_bracket(const Bivector& r, const MPoly& f, const MPoly& h);
/// Cyclic sum of double brackets over all coordinate triples.
CheckReport jacobi_check(const Bivector& r);

}  // namespace coboundary
