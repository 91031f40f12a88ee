#include "coboundary/classical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "common/parallel.hpp"

namespace coboundary {

namespace {

std::size_t sq(std::size_t n) { return n * n; }

// Matrix and bivector-field arithmetic shared by the numeric (Scalar) and
// symbolic (MPoly) paths. Matrices are n x n row-major, fields N x N with
// N = n^2, flat index a*N + b for slot pair (a, b).
template <class T>
struct FieldOps {
  std::size_t n;

  std::vector<T> matmul(const std::vector<T>& a, const std::vector<T>& b) const {
    std::vector<T> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[i * n + k].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!b[k * n + j].is_zero()) out[i * n + j] += a[i * n + k] * b[k * n + j];
      }
    return out;
  }

  // One slot at a time: V -> Vh on slot `slot` (0 or 1).
  std::vector<T> right_slot(const std::vector<T>& c, const std::vector<T>& h, int slot) const {
    const std::size_t N = n * n;
    std::vector<T> out(N * N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        const T& v = c[a * N + b];
        if (v.is_zero()) continue;
        const std::size_t s = slot == 0 ? a : b;
        const std::size_t i = s / n, j = s % n;
        for (std::size_t l = 0; l < n; ++l) {
          if (h[j * n + l].is_zero()) continue;
          const std::size_t t = i * n + l;
          out[slot == 0 ? t * N + b : a * N + t] += v * h[j * n + l];
        }
      }
    return out;
  }

  std::vector<T> left_slot(const std::vector<T>& c, const std::vector<T>& h, int slot) const {
    const std::size_t N = n * n;
    std::vector<T> out(N * N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        const T& v = c[a * N + b];
        if (v.is_zero()) continue;
        const std::size_t s = slot == 0 ? a : b;
        const std::size_t i = s / n, j = s % n;
        for (std::size_t k = 0; k < n; ++k) {
          if (h[k * n + i].is_zero()) continue;
          const std::size_t t = k * n + j;
          out[slot == 0 ? t * N + b : a * N + t] += h[k * n + i] * v;
        }
      }
    return out;
  }

  std::vector<T> right(const std::vector<T>& c, const std::vector<T>& h) const {
    return right_slot(right_slot(c, h, 0), h, 1);
  }
  std::vector<T> left(const std::vector<T>& c, const std::vector<T>& h) const {
    return left_slot(left_slot(c, h, 0), h, 1);
  }

  static std::vector<T> add(std::vector<T> a, const std::vector<T>& b, long sign = 1) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (sign > 0) a[k] += b[k];
      else a[k] -= b[k];
    }
    return a;
  }

  static std::vector<T> scale(std::vector<T> a, const T& s) {
    for (auto& x : a) x = x * s;
    return a;
  }

  // rg + sign * gr
  std::vector<T> pi(const std::vector<T>& r, const std::vector<T>& g, long sign) const {
    return add(right(r, g), left(r, g), sign);
  }
};

template <class T>
std::vector<T> lift(const Tensor& t) {
  std::vector<T> out;
  out.reserve(t.size());
  for (const auto& s : t.entries()) out.emplace_back(s);
  return out;
}

Tensor field_tensor(std::size_t n, std::vector<Scalar> v) { return Tensor({sq(n), sq(n)}, std::move(v)); }

std::string slot_label(std::size_t n, std::size_t a) {
  return "e" + std::to_string(a / n + 1) + "^" + std::to_string(a % n + 1);
}

std::string pair_label(std::size_t n, std::size_t flat) {
  const std::size_t N = sq(n);
  return slot_label(n, flat / N) + " (x) " + slot_label(n, flat % N);
}

// First differing component of two N x N fields, or nullopt.
std::optional<Json> field_difference(std::size_t n, const Tensor& lhs, const Tensor& rhs) {
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (lhs[k] != rhs[k]) {
      return Json{{"component", pair_label(n, k)}, {"lhs", lhs[k].to_string()}, {"rhs", rhs[k].to_string()}};
    }
  }
  return std::nullopt;
}

Json matrix_json(const Tensor& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

void require_square(const Tensor& g, std::size_t n) {
  if (g.rank() != 2 || g.rows() != n || g.cols() != n)
    throw ShapeError("expected " + std::to_string(n) + "x" + std::to_string(n) + " matrix, got " +
                     shape_text(g.shape()));
}

PointBivector pi_signed(const Bivector& r, const Tensor& g, long sign) {
  const std::size_t n = r.basis()->n();
  require_square(g, n);
  if (determinant(g).is_zero()) throw ArithmeticError("bivector field evaluated at a singular matrix");
  FieldOps<Scalar> ops{n};
  return {g, field_tensor(n, ops.pi(r.components().entries(), g.entries(), sign))};
}

Json sample_params(const Bivector& r, std::size_t samples) {
  return Json{{"n", r.basis()->n()}, {"samples", samples}};
}

}  // namespace

// ---- LieBasis ----

LieBasis::LieBasis(std::size_t n) : n_(n) {
  if (n == 0) throw UsageError("gl(n) requires n >= 1");
  const std::size_t N = dim();
  brackets_.resize(N * N);
  std::vector<Tensor> el;
  for (std::size_t a = 0; a < N; ++a) el.push_back(element(a));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      const Tensor c = coboundary::matmul(el[a], el[b]) - coboundary::matmul(el[b], el[a]);
      auto& out = brackets_[a * N + b];
      for (std::size_t k = 0; k < N; ++k)
        if (!c[k].is_zero()) out.emplace_back(k, c[k] == Scalar(1) ? 1L : -1L);
      // Compare with the closed form d_jk e_i^l - d_li e_k^j.
      const auto [i, j] = position(a);
      const auto [k, l] = position(b);
      Tensor expect = Tensor::zeros({n, n});
      if (j == k) expect.at(i, l) += Scalar(1);
      if (l == i) expect.at(k, j) -= Scalar(1);
      if (expect != c) throw std::logic_error("gl(n) bracket mismatch at " + label(a) + ", " + label(b));
    }
}

LieBasisPtr LieBasis::gl(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, LieBasisPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const LieBasis>(n);
  return slot;
}

Tensor LieBasis::element(std::size_t a) const {
  Tensor t = Tensor::zeros({n_, n_});
  t[a] = Scalar(1);
  return t;
}

std::string LieBasis::label(std::size_t a) const { return slot_label(n_, a); }

// ---- Bivector / Trivector ----

Bivector::Bivector(LieBasisPtr basis, Tensor components) : basis_(std::move(basis)), c_(std::move(components)) {
  const std::size_t N = basis_->dim();
  if (c_.shape() != Shape{N, N}) throw std::invalid_argument("bivector components must be " + shape_text({N, N}));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b)
      if (c_.at(a, b) != -c_.at(b, a))
        throw std::invalid_argument("bivector components not antisymmetric at (" + basis_->label(a) + ", " +
                                    basis_->label(b) + ")");
}

Bivector Bivector::zero(LieBasisPtr basis) {
  const std::size_t N = basis->dim();
  return Bivector(std::move(basis), Tensor::zeros({N, N}));
}

Bivector Bivector::wedge(LieBasisPtr basis, std::size_t a, std::size_t b) {
  const std::size_t N = basis->dim();
  Tensor c = Tensor::zeros({N, N});
  c.at(a, b) += Scalar(1);
  c.at(b, a) -= Scalar(1);
  return Bivector(std::move(basis), std::move(c));
}

Bivector operator+(const Bivector& a, const Bivector& b) {
  if (a.basis_->n() != b.basis_->n()) throw ShapeError("bivectors over different gl(n)");
  return Bivector(a.basis_, a.c_ + b.c_);
}

namespace {

const std::array<std::pair<std::array<int, 3>, int>, 6> kPerms3{{
    {{0, 1, 2}, 1}, {{1, 2, 0}, 1}, {{2, 0, 1}, 1}, {{1, 0, 2}, -1}, {{0, 2, 1}, -1}, {{2, 1, 0}, -1},
}};

}  // namespace

Trivector::Trivector(LieBasisPtr basis, Tensor components) : basis_(std::move(basis)), c_(std::move(components)) {
  const std::size_t N = basis_->dim();
  if (c_.shape() != Shape{N, N, N}) throw std::invalid_argument("trivector components must be " + shape_text({N, N, N}));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c) {
        const Scalar& v = c_[(a * N + b) * N + c];
        if (v != -c_[(b * N + a) * N + c] || v != -c_[(a * N + c) * N + b])
          throw std::invalid_argument("trivector components not antisymmetric at (" + basis_->label(a) + ", " +
                                      basis_->label(b) + ", " + basis_->label(c) + ")");
      }
}

Trivector Trivector::wedge(LieBasisPtr basis, std::size_t a, std::size_t b, std::size_t c) {
  const std::size_t N = basis->dim();
  Tensor t = Tensor::zeros({N, N, N});
  const std::array<std::size_t, 3> idx{a, b, c};
  for (const auto& [p, sign] : kPerms3)
    t[(idx[p[0]] * N + idx[p[1]]) * N + idx[p[2]]] += Scalar(sign);
  return Trivector(std::move(basis), std::move(t));
}

Bivector standard_r(std::size_t n) {
  if (n < 2) throw UsageError("standard r-matrix requires n >= 2");
  const auto basis = LieBasis::gl(n);
  Bivector r = Bivector::zero(basis);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) r = r + Bivector::wedge(basis, basis->index(j, k), basis->index(k, j));
  return r;
}

Trivector schouten_square(const Bivector& r) {
  const auto& basis = r.basis();
  const std::size_t N = basis->dim();
  std::vector<std::pair<std::size_t, std::size_t>> nz;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      if (!r.at(a, b).is_zero()) nz.emplace_back(a, b);
  Tensor t = Tensor::zeros({N, N, N});
  auto at = [&](std::size_t x, std::size_t y, std::size_t z) -> Scalar& { return t[(x * N + y) * N + z]; };
  for (const auto& [a, b] : nz)
    for (const auto& [c, d] : nz) {
      const Scalar w = r.at(a, b) * r.at(c, d);
      // [r12, r13]: [X_a, X_c] (x) X_b (x) X_d
      for (const auto& [e, f] : basis->bracket(a, c)) at(e, b, d) += w * Scalar(f);
      // [r12, r23]: X_a (x) [X_b, X_c] (x) X_d
      for (const auto& [e, f] : basis->bracket(b, c)) at(a, e, d) += w * Scalar(f);
      // [r13, r23]: X_a (x) X_c (x) [X_b, X_d]
      for (const auto& [e, f] : basis->bracket(b, d)) at(a, c, e) += w * Scalar(f);
    }
  Tensor alt = Tensor::zeros({N, N, N});
  const Scalar sixth = Scalar::fraction(1, 6);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      for (std::size_t z = 0; z < N; ++z) {
        const Scalar& v = at(x, y, z);
        if (v.is_zero()) continue;
        const std::array<std::size_t, 3> idx{x, y, z};
        for (const auto& [p, sign] : kPerms3)
          alt[(idx[p[0]] * N + idx[p[1]]) * N + idx[p[2]]] += v * sixth * Scalar(sign);
      }
  return Trivector(basis, std::move(alt));
}

std::optional<InvarianceViolation> ad_invariance_violation(const Trivector& t) {
  const auto& basis = t.basis();
  const std::size_t N = basis->dim();
  const Tensor& c = t.components();
  for (std::size_t x = 0; x < N; ++x) {
    Tensor out = Tensor::zeros({N, N, N});
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        for (std::size_t d = 0; d < N; ++d) {
          const Scalar& v = c[(a * N + b) * N + d];
          if (v.is_zero()) continue;
          for (const auto& [e, f] : basis->bracket(x, a)) out[(e * N + b) * N + d] += v * Scalar(f);
          for (const auto& [e, f] : basis->bracket(x, b)) out[(a * N + e) * N + d] += v * Scalar(f);
          for (const auto& [e, f] : basis->bracket(x, d)) out[(a * N + b) * N + e] += v * Scalar(f);
        }
    for (std::size_t k = 0; k < out.size(); ++k)
      if (!out[k].is_zero()) return InvarianceViolation{x, {k / (N * N), (k / N) % N, k % N}, out[k]};
  }
  return std::nullopt;
}

// ---- bivector fields ----

bool PointBivector::is_antisymmetric() const {
  const std::size_t N = components.rows();
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b)
      if (components.at(a, b) != -components.at(b, a)) return false;
  return true;
}

Tensor right_translate(const Tensor& components, const Tensor& h) {
  const std::size_t n = h.rows();
  FieldOps<Scalar> ops{n};
  return field_tensor(n, ops.right(components.entries(), h.entries()));
}

Tensor left_translate(const Tensor& components, const Tensor& h) {
  const std::size_t n = h.rows();
  FieldOps<Scalar> ops{n};
  return field_tensor(n, ops.left(components.entries(), h.entries()));
}

PointBivector pi_minus(const Bivector& r, const Tensor& g) { return pi_signed(r, g, -1); }
PointBivector pi_plus(const Bivector& r, const Tensor& g) { return pi_signed(r, g, 1); }

// ---- samples ----

long SampleStream::next_entry() { return static_cast<long>(rng_() % 7) - 3; }

Tensor SampleStream::next_invertible() {
  for (;;) {
    Tensor m = Tensor::zeros({n_, n_});
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = Scalar(next_entry());
    if (!determinant(m).is_zero()) return m;
  }
}

Bivector SampleStream::next_bivector(const LieBasisPtr& basis) {
  const std::size_t N = basis->dim();
  Tensor c = Tensor::zeros({N, N});
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b) {
      const Scalar v(next_entry());
      c.at(a, b) = v;
      c.at(b, a) = -v;
    }
  return Bivector(basis, std::move(c));
}

std::vector<Tensor> SampleStream::points(std::size_t count) {
  std::vector<Tensor> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(next_invertible());
  return out;
}

std::vector<std::pair<Tensor, Tensor>> SampleStream::pairs(std::size_t count) {
  std::vector<std::pair<Tensor, Tensor>> out;
  for (std::size_t k = 0; k < count; ++k) {
    Tensor g = next_invertible();
    out.emplace_back(std::move(g), next_invertible());
  }
  return out;
}

std::vector<std::array<Tensor, 3>> SampleStream::triples(std::size_t count) {
  std::vector<std::array<Tensor, 3>> out;
  for (std::size_t k = 0; k < count; ++k) {
    Tensor x = next_invertible();
    Tensor y = next_invertible();
    out.push_back({std::move(x), std::move(y), next_invertible()});
  }
  return out;
}

// ---- checks ----

CheckReport check_schouten(std::size_t n) {
  CheckReport rep;
  rep.check = "schouten";
  rep.params["n"] = n;
  const Bivector r = standard_r(n);
  const Trivector t = schouten_square(r);
  const auto& basis = r.basis();
  std::size_t nonzero = 0;
  for (const auto& v : t.components().entries()) nonzero += v.is_zero() ? 0 : 1;
  rep.note("[r,r] nonzero components", Json(nonzero));
  const auto bad = ad_invariance_violation(t);
  Json detail = Json::object();
  if (bad) {
    detail["x"] = basis->label(bad->x);
    detail["value"] = bad->value.to_string();
    rep.witness(detail);
  }
  rep.record("[r,r] is ad-invariant", !bad, detail);
  // A non-invariant trivector must be detected.
  const Trivector probe = Trivector::wedge(basis, basis->index(0, 0), basis->index(0, 1), basis->index(1, 0));
  const auto probe_bad = ad_invariance_violation(probe);
  Json pd = Json::object();
  if (probe_bad) pd["x"] = basis->label(probe_bad->x);
  rep.record("e1^1 ^ e1^2 ^ e2^1 is not ad-invariant", probe_bad.has_value(), pd);
  return rep;
}

CheckReport check_multiplicativity(const Bivector& r, const std::vector<std::pair<Tensor, Tensor>>& samples) {
  CheckReport rep;
  rep.check = "multiplicativity";
  rep.params = sample_params(r, samples.size());
  const auto diffs = detail::parallel_map(samples.size(), [&](std::size_t k) {
    const auto& [g, h] = samples[k];
    const Tensor lhs = pi_minus(r, matmul(g, h)).components;
    const Tensor rhs = right_translate(pi_minus(r, g).components, h) + left_translate(pi_minus(r, h).components, g);
    return field_difference(r.basis()->n(), lhs, rhs);
  });
  for (std::size_t k = 0; k < samples.size(); ++k) {
    Json d = diffs[k] ? *diffs[k] : Json::object();
    if (diffs[k]) {
      Json w = d;
      w["sample"] = k;
      w["g"] = matrix_json(samples[k].first);
      w["h"] = matrix_json(samples[k].second);
      rep.witness(std::move(w));
    }
    rep.record("pi(gh) = pi(g)h + g pi(h) at sample " + std::to_string(k), !diffs[k], d);
  }
  return rep;
}

CheckReport check_antipode(const Bivector& r, const std::vector<Tensor>& samples) {
  CheckReport rep;
  rep.check = "antipode";
  rep.params = sample_params(r, samples.size());
  const auto diffs = detail::parallel_map(samples.size(), [&](std::size_t k) {
    const Tensor& g = samples[k];
    const Tensor ginv = inverse(g);
    const Tensor lhs = left_translate(right_translate(pi_minus(r, g).components, ginv), ginv);
    const Tensor rhs = -pi_minus(r, ginv).components;
    return field_difference(r.basis()->n(), lhs, rhs);
  });
  for (std::size_t k = 0; k < samples.size(); ++k) {
    Json d = diffs[k] ? *diffs[k] : Json::object();
    if (diffs[k]) {
      Json w = d;
      w["sample"] = k;
      w["g"] = matrix_json(samples[k]);
      rep.witness(std::move(w));
    }
    rep.record("g^-1 pi(g) g^-1 = -pi(g^-1) at sample " + std::to_string(k), !diffs[k], d);
  }
  return rep;
}

CheckReport check_gauge_identity(const Bivector& r, const Bivector& rho_offset,
                                 const std::vector<std::array<Tensor, 3>>& samples) {
  CheckReport rep;
  rep.check = "gauge-classical";
  rep.params = sample_params(r, samples.size());
  const std::size_t n = r.basis()->n();
  const Tensor& A = rho_offset.components();
  auto pi = [&](const Tensor& g) { return pi_minus(r, g).components; };
  auto rho = [&](const Tensor& g) { return pi(g) + left_translate(A, g); };
  using Diffs = std::array<std::optional<Json>, 3>;
  const auto diffs = detail::parallel_map(samples.size(), [&](std::size_t k) {
    const auto& [x, y, z] = samples[k];
    const Tensor xy = matmul(x, y), yz = matmul(y, z);
    Diffs out;
    // rho(xyz) = pi(x)yz + x rho(y) z - xy pi(z)
    const Tensor l6 = rho(matmul(xy, z));
    const Tensor r6 = right_translate(pi(x), yz) + right_translate(left_translate(rho(y), x), z) -
                      left_translate(pi(z), xy);
    out[0] = field_difference(n, l6, r6);
    // rho(xy) = pi(x)y + x rho(y)
    out[1] = field_difference(n, rho(xy), right_translate(pi(x), y) + left_translate(rho(y), x));
    // rho(yz) = rho(y)z - y pi(z)
    out[2] = field_difference(n, rho(yz), right_translate(rho(y), z) - left_translate(pi(z), y));
    return out;
  });
  const std::array<std::string, 3> names{"rho(xyz) = pi(x)yz + x rho(y) z - xy pi(z)",
                                         "rho(xy) = pi(x)y + x rho(y)", "rho(yz) = rho(y)z - y pi(z)"};
  for (std::size_t id = 0; id < 3; ++id) {
    Json failing = Json::array();
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (!diffs[k][id]) continue;
      failing.push_back(k);
      if (failing.size() == 1) {
        Json w = *diffs[k][id];
        w["identity"] = names[id];
        w["sample"] = k;
        w["x"] = matrix_json(samples[k][0]);
        w["y"] = matrix_json(samples[k][1]);
        w["z"] = matrix_json(samples[k][2]);
        rep.witness(std::move(w));
      }
    }
    Json d = Json::object();
    if (!failing.empty()) d["failing_samples"] = failing;
    rep.record(names[id], failing.empty(), d);
  }
  return rep;
}

CheckReport check_translation(const Bivector& r, const Tensor& g0, const std::vector<Tensor>& samples) {
  CheckReport rep;
  rep.check = "translation";
  rep.params = sample_params(r, samples.size());
  const std::size_t n = r.basis()->n();
  require_square(g0, n);
  const Tensor g0inv = inverse(g0);
  const Tensor& rc = r.components();

  const Tensor conj = left_translate(right_translate(rc, g0inv), g0);
  const auto da = field_difference(n, conj, -rc);
  if (da) rep.witness(Json{{"subcheck", "a"}, {"difference", *da}});
  rep.record("g0 r g0^-1 = -r", !da, da ? *da : Json::object());

  const Tensor pp = pi_plus(r, g0).components;
  const auto db = field_difference(n, pp, Tensor::zeros(pp.shape()));
  if (db) rep.witness(Json{{"subcheck", "b"}, {"difference", *db}});
  rep.record("pi_plus(g0) = 0", !db, db ? *db : Json::object());

  const auto diffs = detail::parallel_map(samples.size(), [&](std::size_t k) {
    const Tensor& g = samples[k];
    return field_difference(n, pi_minus(r, matmul(g, g0)).components, right_translate(pi_plus(r, g).components, g0));
  });
  Json failing = Json::array();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!diffs[k]) continue;
    if (failing.empty()) {
      Json w = *diffs[k];
      w["subcheck"] = "c";
      w["sample"] = k;
      w["g"] = matrix_json(samples[k]);
      rep.witness(std::move(w));
    }
    failing.push_back(k);
  }
  Json d = Json::object();
  if (!failing.empty()) d["failing_samples"] = failing;
  rep.record("pi(g g0) = pi_plus(g) g0", failing.empty(), d);
  return rep;
}

// ---- symbolic ----

namespace {

using PolyMat = std::vector<MPoly>;

PolyMat symbolic_matrix(std::size_t n, std::size_t offset) {
  PolyMat m;
  for (std::size_t k = 0; k < n * n; ++k) m.push_back(MPoly::variable(offset + k));
  return m;
}

// Determinant and adjugate by cofactor expansion; fine for n <= 3.
MPoly poly_det(const PolyMat& m, std::size_t n) {
  if (n == 1) return m[0];
  MPoly d;
  for (std::size_t j = 0; j < n; ++j) {
    PolyMat minor;
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) minor.push_back(m[i * n + c]);
    const MPoly term = m[j] * poly_det(minor, n - 1);
    if (j % 2 == 0) d += term;
    else d -= term;
  }
  return d;
}

PolyMat poly_adjugate(const PolyMat& m, std::size_t n) {
  PolyMat adj(n * n);
  if (n == 1) {
    adj[0] = MPoly(1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMat minor;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (a != i && b != j) minor.push_back(m[a * n + b]);
      MPoly c = poly_det(minor, n - 1);
      adj[j * n + i] = (i + j) % 2 == 0 ? c : -c;
    }
  return adj;
}

SymbolicResult compare(std::string identity, std::size_t n, const PolyMat& lhs, const PolyMat& rhs) {
  SymbolicResult res{std::move(identity), true, ""};
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    if (lhs[k] == rhs[k]) continue;
    res.holds = false;
    std::string diff = (lhs[k] - rhs[k]).to_string();
    if (diff.size() > 200) diff = diff.substr(0, 200) + "...";
    res.witness = pair_label(n, k) + ": " + diff;
    break;
  }
  return res;
}

}  // namespace

std::vector<SymbolicResult> symbolic_identities(const Bivector& r, const Tensor& g0) {
  const std::size_t n = r.basis()->n();
  const std::size_t N = sq(n);
  FieldOps<MPoly> ops{n};
  const PolyMat rc = lift<MPoly>(r.components());
  const PolyMat A = FieldOps<MPoly>::scale(rc, MPoly(2));
  auto pi = [&](const PolyMat& g) { return ops.pi(rc, g, -1); };
  auto pip = [&](const PolyMat& g) { return ops.pi(rc, g, 1); };
  auto rho = [&](const PolyMat& g) { return FieldOps<MPoly>::add(pi(g), ops.left(A, g)); };
  auto add = [](const PolyMat& a, const PolyMat& b) { return FieldOps<MPoly>::add(a, b); };
  auto sub = [](const PolyMat& a, const PolyMat& b) { return FieldOps<MPoly>::add(a, b, -1); };

  using Task = std::function<SymbolicResult()>;
  std::vector<Task> tasks;
  tasks.emplace_back([&] {
    const PolyMat g = symbolic_matrix(n, 0), h = symbolic_matrix(n, N);
    return compare("pi(gh) = pi(g)h + g pi(h)", n, pi(ops.matmul(g, h)), add(ops.right(pi(g), h), ops.left(pi(h), g)));
  });
  tasks.emplace_back([&] {
    // With g^-1 = adj(g)/det(g) and pi quadratic in g, the antipode identity
    // becomes adj pi(g) adj = -det^2 pi(adj).
    const PolyMat g = symbolic_matrix(n, 0);
    const PolyMat adj = poly_adjugate(g, n);
    const MPoly det = poly_det(g, n);
    const PolyMat lhs = ops.left(ops.right(pi(g), adj), adj);
    const PolyMat rhs = FieldOps<MPoly>::scale(pi(adj), -(det * det));
    return compare("adj(g) pi(g) adj(g) = -det(g)^2 pi(adj(g))", n, lhs, rhs);
  });
  tasks.emplace_back([&] {
    const PolyMat x = symbolic_matrix(n, 0), y = symbolic_matrix(n, N), z = symbolic_matrix(n, 2 * N);
    const PolyMat xy = ops.matmul(x, y), yz = ops.matmul(y, z);
    const PolyMat lhs = rho(ops.matmul(xy, z));
    const PolyMat rhs = sub(add(ops.right(pi(x), yz), ops.right(ops.left(rho(y), x), z)), ops.left(pi(z), xy));
    return compare("rho(xyz) = pi(x)yz + x rho(y) z - xy pi(z), rho = pi_plus", n, lhs, rhs);
  });
  tasks.emplace_back([&] {
    const PolyMat x = symbolic_matrix(n, 0), y = symbolic_matrix(n, N);
    return compare("rho(xy) = pi(x)y + x rho(y), rho = pi_plus", n, rho(ops.matmul(x, y)),
                   add(ops.right(pi(x), y), ops.left(rho(y), x)));
  });
  tasks.emplace_back([&] {
    const PolyMat y = symbolic_matrix(n, 0), z = symbolic_matrix(n, N);
    return compare("rho(yz) = rho(y)z - y pi(z), rho = pi_plus", n, rho(ops.matmul(y, z)),
                   sub(ops.right(rho(y), z), ops.left(pi(z), y)));
  });
  tasks.emplace_back([&] {
    const PolyMat g = symbolic_matrix(n, 0);
    const PolyMat g0p = lift<MPoly>(g0);
    return compare("pi(g g0) = pi_plus(g) g0", n, pi(ops.matmul(g, g0p)), ops.right(pip(g), g0p));
  });
  return detail::parallel_map(tasks.size(), [&](std::size_t k) { return tasks[k](); });
}

namespace {

// pi(g) with g the coordinate matrix: the bracket {x_a, x_b}.
PolyMat coordinate_field(const Bivector& r) {
  const std::size_t n = r.basis()->n();
  FieldOps<MPoly> ops{n};
  return ops.pi(lift<MPoly>(r.components()), symbolic_matrix(n, 0), -1);
}

MPoly bracket_with(const PolyMat& field, std::size_t N, const MPoly& f, const MPoly& h) {
  std::vector<MPoly> df(N), dh(N);
  for (std::size_t a = 0; a < N; ++a) {
    df[a] = f.derivative(a);
    dh[a] = h.derivative(a);
  }
  MPoly out;
  for (std::size_t a = 0; a < N; ++a) {
    if (df[a].is_zero()) continue;
    for (std::size_t b = 0; b < N; ++b) {
      if (dh[b].is_zero() || field[a * N + b].is_zero()) continue;
      out += field[a * N + b] * df[a] * dh[b];
    }
  }
  return out;
}

}  // namespace

MPoly poisson_bracket(const Bivector& r, const MPoly& f, const MPoly& h) {
  return bracket_with(coordinate_field(r), r.basis()->dim(), f, h);
}

CheckReport jacobi_check(const Bivector& r) {
  CheckReport rep;
  rep.check = "jacobi";
  const std::size_t n = r.basis()->n();
  const std::size_t N = r.basis()->dim();
  rep.params["n"] = n;
  const PolyMat field = coordinate_field(r);
  std::vector<MPoly> x;
  for (std::size_t a = 0; a < N; ++a) x.push_back(MPoly::variable(a));
  const std::size_t total = N * N * N;
  const auto sums = detail::parallel_map(total, [&](std::size_t t) {
    const std::size_t a = t / (N * N), b = (t / N) % N, c = t % N;
    auto br = [&](const MPoly& f, const MPoly& h) { return bracket_with(field, N, f, h); };
    return br(x[a], br(x[b], x[c])) + br(x[b], br(x[c], x[a])) + br(x[c], br(x[a], x[b]));
  });
  std::size_t bad = 0;
  for (std::size_t t = 0; t < total; ++t) {
    if (sums[t].is_zero()) continue;
    if (bad++ == 0) {
      rep.witness(Json{{"triple", {slot_label(n, t / (N * N)), slot_label(n, (t / N) % N), slot_label(n, t % N)}},
                       {"sum", sums[t].to_string()}});
    }
  }
  rep.record("cyclic double brackets vanish on " + std::to_string(total) + " coordinate triples", bad == 0,
             bad ? Json{{"nonzero_triples", bad}} : Json::object());
  return rep;
}

}  // namespace coboundary
