#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "coboundary/scalar.hpp"

namespace coboundary {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Shape = std::vector<std::size_t>;

std::string shape_text(const Shape& s);

/// Dense multi-index array over Scalar, row-major.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape);
  Tensor(Shape shape, std::vector<Scalar> entries);

  static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
  static Tensor identity(std::size_t n);
  /// Rank-2 tensor from nested rows.
  static Tensor matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

  const Shape& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::size_t rows() const;
  std::size_t cols() const;
  bool is_square() const { return rank() == 2 && shape_[0] == shape_[1]; }

  Scalar& operator[](std::size_t flat) { return data_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return data_[flat]; }
  Scalar& at(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  Scalar& at(const std::vector<std::size_t>& index);
  const Scalar& at(const std::vector<std::size_t>& index) const;
  const std::vector<Scalar>& entries() const { return data_; }

  std::size_t flat_index(const std::vector<std::size_t>& index) const;
  std::vector<std::size_t> multi_index(std::size_t flat) const;

  bool is_zero() const;
  /// Same entries reinterpreted with another shape of equal size.
  Tensor reshaped(Shape shape) const;

  Tensor operator-() const;
  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(const Scalar& s);
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Scalar& s) { return a *= s; }
  friend Tensor operator*(const Scalar& s, Tensor a) { return a *= s; }

  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.shape_ == b.shape_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Tensor& a, const Tensor& b) { return !(a == b); }

 private:
  Shape shape_;
  std::vector<Scalar> data_;
};

Tensor matmul(const Tensor& a, const Tensor& b);
/// Matrix times vector (rank-1).
Tensor apply(const Tensor& a, const Tensor& v);
/// Kronecker product of matrices: entry (i*p + k, j*r + l) = A(i,j) B(k,l).
Tensor kron(const Tensor& a, const Tensor& b);
Tensor transpose(const Tensor& a);
Tensor conj_transpose(const Tensor& a);
Tensor conjugate(const Tensor& a);
Tensor vector_of(std::vector<Scalar> v);

/// Inverse of a square matrix; throws ArithmeticError when singular.
Tensor inverse(const Tensor& a);
Scalar determinant(const Tensor& a);

/// Antidiagonal n x n matrix, e_j -> e_{n+1-j}.
Tensor total_permutation_matrix(std::size_t n);

/// Permutation of tensor factors on (C^d)^{(x) k}. Output factor p carries the
/// index of input factor source[p].
class PermutationOp {
 public:
  PermutationOp(std::size_t d, std::vector<std::size_t> source);

  std::size_t factors() const { return source_.size(); }
  std::size_t base_dimension() const { return d_; }
  const std::vector<std::size_t>& source() const { return source_; }

  /// Image basis index of basis index `flat`.
  std::size_t map_index(std::size_t flat) const;
  Tensor expand() const;
  /// Applies the operator to a rank-1 tensor or to a tensor of rank k with all extents d.
  Tensor apply_to(const Tensor& t) const;
  PermutationOp inverse() const;

 private:
  std::size_t d_;
  std::vector<std::size_t> source_;
};

/// Reversal (1,...,k) -> (k,...,1) of k tensor factors of dimension d.
PermutationOp factor_reversal_operator(std::size_t n_factors, std::size_t d);
/// The flip P on C^d (x) C^d.
Tensor flip_matrix(std::size_t d);

/// Solution set of A x = b: particular solution plus nullspace basis.
struct LinearSolution {
  bool consistent = false;
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> nullspace;
  std::size_t rank = 0;
};

/// Exact fraction-free (Bareiss) elimination, first-nonzero pivoting.
LinearSolution solve_linear(const Tensor& a, const Tensor& b);
LinearSolution solve_linear(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b);

}  // namespace coboundary
