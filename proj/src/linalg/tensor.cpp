#include "coboundary/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace coboundary {

namespace {

std::size_t product(const Shape& s) {
  return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
}

void require_matrix(const Tensor& a, const char* op) {
  if (a.rank() != 2) throw ShapeError(std::string(op) + ": expected a matrix, got shape " + shape_text(a.shape()));
}

}  // namespace

std::string shape_text(const Shape& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)), data_(product(shape_)) {}

Tensor::Tensor(Shape shape, std::vector<Scalar> entries) : shape_(std::move(shape)), data_(std::move(entries)) {
  if (data_.size() != product(shape_)) {
    throw ShapeError("entry count " + std::to_string(data_.size()) + " does not match shape " + shape_text(shape_));
  }
}

Tensor Tensor::identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = Scalar(1);
  return t;
}

Tensor Tensor::matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<Scalar> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor({r, c}, std::move(data));
}

std::size_t Tensor::rows() const {
  require_matrix(*this, "rows");
  return shape_[0];
}

std::size_t Tensor::cols() const {
  require_matrix(*this, "cols");
  return shape_[1];
}

std::size_t Tensor::flat_index(const std::vector<std::size_t>& index) const {
  if (index.size() != shape_.size()) throw ShapeError("index rank mismatch for shape " + shape_text(shape_));
  std::size_t flat = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= shape_[k]) throw ShapeError("index out of range for shape " + shape_text(shape_));
    flat = flat * shape_[k] + index[k];
  }
  return flat;
}

std::vector<std::size_t> Tensor::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(shape_.size());
  for (std::size_t k = shape_.size(); k-- > 0;) {
    idx[k] = flat % shape_[k];
    flat /= shape_[k];
  }
  return idx;
}

Scalar& Tensor::at(const std::vector<std::size_t>& index) { return data_[flat_index(index)]; }
const Scalar& Tensor::at(const std::vector<std::size_t>& index) const { return data_[flat_index(index)]; }

bool Tensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Tensor Tensor::reshaped(Shape shape) const {
  if (product(shape) != data_.size()) {
    throw ShapeError("cannot reshape " + shape_text(shape_) + " to " + shape_text(shape));
  }
  return Tensor(std::move(shape), data_);
}

Tensor Tensor::operator-() const {
  Tensor r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  if (shape_ != o.shape_) throw ShapeError("add: shapes " + shape_text(shape_) + " and " + shape_text(o.shape_));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  if (shape_ != o.shape_) throw ShapeError("sub: shapes " + shape_text(shape_) + " and " + shape_text(o.shape_));
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(const Scalar& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: shapes " + shape_text(a.shape()) + " and " + shape_text(b.shape()));
  }
  const std::size_t n = a.rows(), m = a.cols(), p = b.cols();
  Tensor c({n, p});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < p; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        c.at(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

Tensor apply(const Tensor& a, const Tensor& v) {
  require_matrix(a, "apply");
  if (v.rank() != 1 || v.size() != a.cols()) {
    throw ShapeError("apply: shapes " + shape_text(a.shape()) + " and " + shape_text(v.shape()));
  }
  Tensor out({a.rows()});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero() || v[j].is_zero()) continue;
      out[i] += a.at(i, j) * v[j];
    }
  }
  return out;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  require_matrix(a, "kron");
  require_matrix(b, "kron");
  const std::size_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Tensor c({ar * br, ac * bc});
  for (std::size_t i = 0; i < ar; ++i) {
    for (std::size_t j = 0; j < ac; ++j) {
      const Scalar& aij = a.at(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < br; ++k) {
        for (std::size_t l = 0; l < bc; ++l) {
          if (b.at(k, l).is_zero()) continue;
          c.at(i * br + k, j * bc + l) = aij * b.at(k, l);
        }
      }
    }
  }
  return c;
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "transpose");
  Tensor t({a.cols(), a.rows()});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t.at(j, i) = a.at(i, j);
  }
  return t;
}

Tensor conjugate(const Tensor& a) {
  std::vector<Scalar> e;
  e.reserve(a.size());
  for (const auto& x : a.entries()) e.push_back(x.conjugate());
  return Tensor(a.shape(), std::move(e));
}

Tensor conj_transpose(const Tensor& a) { return conjugate(transpose(a)); }

Tensor vector_of(std::vector<Scalar> v) {
  const std::size_t n = v.size();
  return Tensor({n}, std::move(v));
}

Scalar determinant(const Tensor& a) {
  if (!a.is_square()) throw ShapeError("determinant: shape " + shape_text(a.shape()));
  const std::size_t n = a.rows();
  if (n == 0) return Scalar(1);
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  Scalar prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Scalar();
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      m[i][k] = Scalar();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

Tensor inverse(const Tensor& a) {
  if (!a.is_square()) throw ShapeError("inverse: shape " + shape_text(a.shape()));
  const std::size_t n = a.rows();
  std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
    m[i][n + i] = Scalar(1);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c].is_zero()) ++r;
    if (r == n) throw ArithmeticError("matrix is singular");
    std::swap(m[c], m[r]);
    const Scalar inv = m[c][c].inverse();
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      const Scalar f = m[i][c];
      for (std::size_t j = c; j < 2 * n; ++j) {
        if (!m[c][j].is_zero()) m[i][j] -= f * m[c][j];
      }
    }
  }
  Tensor out({n, n});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = m[i][n + j];
  return out;
}

Tensor total_permutation_matrix(std::size_t n) {
  if (n == 0) throw std::invalid_argument("total_permutation_matrix requires n >= 1");
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.at(i, n - 1 - i) = Scalar(1);
  return t;
}

PermutationOp::PermutationOp(std::size_t d, std::vector<std::size_t> source) : d_(d), source_(std::move(source)) {
  if (d_ == 0 || source_.empty()) throw std::invalid_argument("PermutationOp needs d >= 1 and at least one factor");
  std::vector<bool> seen(source_.size(), false);
  for (auto s : source_) {
    if (s >= source_.size() || seen[s]) throw std::invalid_argument("PermutationOp: not a permutation");
    seen[s] = true;
  }
}

std::size_t PermutationOp::map_index(std::size_t flat) const {
  const std::size_t k = source_.size();
  std::vector<std::size_t> digits(k);
  for (std::size_t p = k; p-- > 0;) {
    digits[p] = flat % d_;
    flat /= d_;
  }
  std::size_t out = 0;
  for (std::size_t p = 0; p < k; ++p) out = out * d_ + digits[source_[p]];
  return out;
}

Tensor PermutationOp::expand() const {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < source_.size(); ++i) dim *= d_;
  Tensor t({dim, dim});
  for (std::size_t j = 0; j < dim; ++j) t.at(map_index(j), j) = Scalar(1);
  return t;
}

Tensor PermutationOp::apply_to(const Tensor& v) const {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < source_.size(); ++i) dim *= d_;
  if (v.size() != dim) throw ShapeError("PermutationOp::apply_to: shape " + shape_text(v.shape()));
  Tensor out(v.shape());
  for (std::size_t j = 0; j < dim; ++j) out[map_index(j)] = v[j];
  return out;
}

PermutationOp PermutationOp::inverse() const {
  std::vector<std::size_t> inv(source_.size());
  for (std::size_t p = 0; p < source_.size(); ++p) inv[source_[p]] = p;
  return PermutationOp(d_, std::move(inv));
}

PermutationOp factor_reversal_operator(std::size_t n_factors, std::size_t d) {
  std::vector<std::size_t> src(n_factors);
  for (std::size_t p = 0; p < n_factors; ++p) src[p] = n_factors - 1 - p;
  return PermutationOp(d, std::move(src));
}

Tensor flip_matrix(std::size_t d) { return factor_reversal_operator(2, d).expand(); }

LinearSolution solve_linear(const std::vector<std::vector<Scalar>>& a, const std::vector<Scalar>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw ShapeError("solve_linear: " + std::to_string(m) + " rows but rhs of length " + std::to_string(b.size()));
  const std::size_t n = m ? a[0].size() : 0;
  std::vector<std::vector<Scalar>> M(m, std::vector<Scalar>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw ShapeError("solve_linear: ragged coefficient matrix");
    std::copy(a[i].begin(), a[i].end(), M[i].begin());
    M[i][n] = b[i];
  }

  // Bareiss forward elimination.
  std::vector<std::size_t> pivot_cols;
  Scalar prev(1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t r = row;
    while (r < m && M[r][col].is_zero()) ++r;
    if (r == m) continue;
    std::swap(M[row], M[r]);
    for (std::size_t i = row + 1; i < m; ++i) {
      const Scalar lead = M[i][col];
      for (std::size_t j = col + 1; j <= n; ++j) {
        Scalar v = M[row][col] * M[i][j];
        if (!lead.is_zero() && !M[row][j].is_zero()) v -= lead * M[row][j];
        M[i][j] = v / prev;
      }
      M[i][col] = Scalar();
    }
    prev = M[row][col];
    pivot_cols.push_back(col);
    ++row;
  }

  LinearSolution sol;
  sol.rank = pivot_cols.size();
  for (std::size_t i = sol.rank; i < m; ++i) {
    if (!M[i][n].is_zero()) return sol;
  }
  sol.consistent = true;

  // Reduced row echelon form.
  for (std::size_t k = sol.rank; k-- > 0;) {
    const std::size_t pc = pivot_cols[k];
    const Scalar inv = M[k][pc].inverse();
    for (std::size_t j = pc; j <= n; ++j) {
      if (!M[k][j].is_zero()) M[k][j] *= inv;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (M[i][pc].is_zero()) continue;
      const Scalar f = M[i][pc];
      for (std::size_t j = pc; j <= n; ++j) {
        if (!M[k][j].is_zero()) M[i][j] -= f * M[k][j];
      }
    }
  }

  sol.particular.assign(n, Scalar());
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < sol.rank; ++k) {
    sol.particular[pivot_cols[k]] = M[k][n];
    is_pivot[pivot_cols[k]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(n);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < sol.rank; ++k) v[pivot_cols[k]] = -M[k][f];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

LinearSolution solve_linear(const Tensor& a, const Tensor& b) {
  require_matrix(a, "solve_linear");
  if (b.rank() != 1 || b.size() != a.rows()) {
    throw ShapeError("solve_linear: shapes " + shape_text(a.shape()) + " and " + shape_text(b.shape()));
  }
  std::vector<std::vector<Scalar>> rows(a.rows(), std::vector<Scalar>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) rows[i][j] = a.at(i, j);
  return solve_linear(rows, b.entries());
}

}  // namespace coboundary
