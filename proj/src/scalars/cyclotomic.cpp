#include "coboundary/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace coboundary {

namespace {

using QVec = std::vector<Rational>;

void trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::vector<long> int_divide(std::vector<long> num, const std::vector<long>& den) {
  // den is monic
  const std::size_t dd = den.size() - 1;
  std::vector<long> quot(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    long c = num[i];
    quot[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  return quot;
}

void reduce_mod_cyclotomic(QVec& p, unsigned m) {
  const auto& phi = cyclotomic_polynomial(m);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    Rational c = p[i];
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
  }
  if (p.size() > deg) p.resize(deg);
  trim(p);
}

// Quotient and remainder in Q[x]; b nonzero.
std::pair<QVec, QVec> divmod(QVec a, const QVec& b) {
  trim(a);
  if (a.size() < b.size()) return {QVec{}, a};
  QVec quot(a.size() - b.size() + 1);
  const Rational lead = b.back();
  const long bdeg = static_cast<long>(b.size()) - 1;
  for (long i = static_cast<long>(a.size()) - 1; i >= bdeg; --i) {
    const auto iu = static_cast<std::size_t>(i);
    if (a[iu] == 0) continue;
    Rational c = a[iu] / lead;
    quot[static_cast<std::size_t>(i - bdeg)] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[static_cast<std::size_t>(i - bdeg) + j] -= c * b[j];
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

QVec poly_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QVec poly_sub(QVec a, const QVec& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::string rational_text(const Rational& r) { return r.get_str(); }

}  // namespace

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  unsigned k = m;
  for (unsigned p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      result -= result / p;
    }
  }
  if (k > 1) result -= result / k;
  return result;
}

const std::vector<long>& cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<long>> cache;
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<long> p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto dit = cache.find(d);
    if (dit == cache.end()) {
      // compute divisor polynomials first; recursion would re-lock
      std::vector<long> pd(d + 1, 0);
      pd[0] = -1;
      pd[d] = 1;
      for (unsigned e = 1; e < d; ++e) {
        if (d % e == 0) pd = int_divide(pd, cache.at(e));
      }
      dit = cache.emplace(d, pd).first;
    }
    p = int_divide(p, dit->second);
  }
  return cache.emplace(m, p).first->second;
}

CycloRational::CycloRational(long v) {
  if (v != 0) c_.push_back(Rational(v));
}

CycloRational::CycloRational(const Rational& v) {
  if (v != 0) c_.push_back(v);
}

CycloRational::CycloRational(unsigned m, std::vector<Rational> c) : order_(m), c_(std::move(c)) {}

CycloRational CycloRational::root_of_unity(unsigned m, long k) {
  if (m == 0) throw std::invalid_argument("root of unity order must be positive");
  const long mm = static_cast<long>(m);
  const long kk = ((k % mm) + mm) % mm;
  QVec c(static_cast<std::size_t>(kk) + 1);
  c[static_cast<std::size_t>(kk)] = 1;
  return from_power_basis(m, std::move(c));
}

CycloRational CycloRational::from_power_basis(unsigned m, std::vector<Rational> coeffs) {
  if (m == 0) throw std::invalid_argument("cyclotomic order must be positive");
  reduce_mod_cyclotomic(coeffs, m);
  CycloRational r(m, std::move(coeffs));
  r.normalize();
  return r;
}

void CycloRational::normalize() {
  if (order_ % 4 == 2) {
    // zeta_{2h} = -zeta_h^{(h+1)/2} for odd h
    const unsigned h = order_ / 2;
    QVec folded(h);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const std::size_t pos = (k * ((h + 1) / 2)) % h;
      if (k % 2 == 0) {
        folded[pos] += c_[k];
      } else {
        folded[pos] -= c_[k];
      }
    }
    order_ = h;
    reduce_mod_cyclotomic(folded, h);
    c_ = std::move(folded);
  }
  trim(c_);
  if (c_.size() <= 1) order_ = 1;
}

bool CycloRational::is_one() const { return c_.size() == 1 && c_[0] == 1; }

Rational CycloRational::rational_value() const {
  if (!is_rational()) throw ArithmeticError("value is not rational: " + to_string());
  return c_.empty() ? Rational(0) : c_[0];
}

CycloRational CycloRational::promoted(unsigned m) const {
  if (m % order_ != 0) throw std::invalid_argument("promotion target is not a multiple of the order");
  if (m == order_) return *this;
  const unsigned step = m / order_;
  QVec c(m);
  for (std::size_t k = 0; k < c_.size(); ++k) c[(k * step) % m] += c_[k];
  reduce_mod_cyclotomic(c, m);
  return CycloRational(m, std::move(c));
}

CycloRational CycloRational::operator-() const {
  CycloRational r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloRational& CycloRational::operator+=(const CycloRational& o) {
  if (o.is_zero()) return *this;
  if (order_ != o.order_ && !o.is_rational()) {
    const unsigned l = std::lcm(order_, o.order_);
    *this = promoted(l);
    const CycloRational op = o.promoted(l);
    if (c_.size() < op.c_.size()) c_.resize(op.c_.size());
    for (std::size_t i = 0; i < op.c_.size(); ++i) c_[i] += op.c_[i];
  } else {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  }
  normalize();
  return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& o) { return *this += -o; }

CycloRational& CycloRational::operator*=(const CycloRational& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) {
    *this = CycloRational();
    return *this;
  }
  if (o.is_rational()) {
    for (auto& x : c_) x *= o.c_[0];
    return *this;
  }
  if (is_rational()) {
    const Rational s = c_[0];
    *this = o;
    for (auto& x : c_) x *= s;
    return *this;
  }
  const unsigned l = std::lcm(order_, o.order_);
  const CycloRational a = promoted(l);
  const CycloRational b = o.promoted(l);
  QVec prod = poly_mul(a.c_, b.c_);
  reduce_mod_cyclotomic(prod, l);
  order_ = l;
  c_ = std::move(prod);
  normalize();
  return *this;
}

CycloRational CycloRational::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero in Q(zeta)");
  if (is_rational()) return CycloRational(Rational(1) / c_[0]);
  const auto& phi = cyclotomic_polynomial(order_);
  QVec r0(phi.begin(), phi.end());
  QVec r1 = c_;
  QVec s0;
  QVec s1{Rational(1)};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(rem);
    QVec next = poly_sub(s0, poly_mul(quot, s1));
    s0 = std::move(s1);
    s1 = std::move(next);
  }
  // r0 is a nonzero constant since phi is irreducible
  const Rational g = r0[0];
  for (auto& x : s0) x /= g;
  return from_power_basis(order_, std::move(s0));
}

CycloRational CycloRational::conjugate() const {
  if (is_rational()) return *this;
  QVec c(order_);
  for (std::size_t k = 0; k < c_.size(); ++k) c[(order_ - k) % order_] += c_[k];
  return from_power_basis(order_, std::move(c));
}

bool operator==(const CycloRational& a, const CycloRational& b) {
  if (a.order_ == b.order_) return a.c_ == b.c_;
  if (a.is_rational() || b.is_rational()) return false;
  const unsigned l = std::lcm(a.order_, b.order_);
  return a.promoted(l).c_ == b.promoted(l).c_;
}

bool CycloRational::is_compound() const {
  std::size_t nz = 0;
  for (const auto& x : c_) nz += (x != 0);
  return nz > 1;
}

bool CycloRational::has_leading_minus() const {
  if (is_compound()) return false;
  for (const auto& x : c_) {
    if (x != 0) return x < 0;
  }
  return false;
}

std::string CycloRational::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    const bool neg = c_[k] < 0;
    const Rational mag = neg ? Rational(-c_[k]) : c_[k];
    std::string term;
    if (k == 0) {
      term = rational_text(mag);
    } else {
      const std::string root = "z" + std::to_string(order_) + "^" + std::to_string(k);
      term = (mag == 1) ? root : rational_text(mag) + "*" + root;
    }
    if (first) {
      out = neg ? "-" + term : term;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

}  // namespace coboundary
