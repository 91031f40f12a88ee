#include "coboundary/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace coboundary {

namespace {

void trim(QPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

bool poly_is_one(const QPoly& p) { return p.size() == 1 && p[0].is_one(); }

QPoly poly_add(const QPoly& a, const QPoly& b) {
  QPoly r = a.size() >= b.size() ? a : b;
  const QPoly& s = a.size() >= b.size() ? b : a;
  for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
  trim(r);
  return r;
}

QPoly poly_neg(QPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  if (poly_is_one(a)) return b;
  if (poly_is_one(b)) return a;
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  trim(r);
  return r;
}

QPoly poly_scale(QPoly a, const CycloRational& c) {
  for (auto& x : a) x *= c;
  trim(a);
  return a;
}

QPoly poly_shift_up(const QPoly& a, int k) {
  if (k <= 0 || a.empty()) return a;
  QPoly r(static_cast<std::size_t>(k));
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

std::pair<QPoly, QPoly> poly_divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw ArithmeticError("polynomial division by zero");
  trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly quot(a.size() - b.size() + 1);
  const CycloRational inv_lead = b.back().inverse();
  const long bdeg = static_cast<long>(b.size()) - 1;
  for (long i = static_cast<long>(a.size()) - 1; i >= bdeg; --i) {
    const auto iu = static_cast<std::size_t>(i);
    if (a[iu].is_zero()) continue;
    const CycloRational c = a[iu] * inv_lead;
    const auto base = static_cast<std::size_t>(i - bdeg);
    quot[base] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[base + j] -= c * b[j];
  }
  trim(a);
  trim(quot);
  return {quot, a};
}

QPoly poly_monic(QPoly a) {
  if (a.empty()) return a;
  const CycloRational inv = a.back().inverse();
  return poly_scale(std::move(a), inv);
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(std::move(a));
}

QPoly poly_exact_div(const QPoly& a, const QPoly& b) {
  auto [quot, rem] = poly_divmod(a, b);
  if (!rem.empty()) throw std::logic_error("inexact polynomial division");
  return quot;
}

int strip_low_zeros(QPoly& p) {
  std::size_t k = 0;
  while (k < p.size() && p[k].is_zero()) ++k;
  if (k > 0) p.erase(p.begin(), p.begin() + static_cast<long>(k));
  return static_cast<int>(k);
}

CycloRational poly_at_one(const QPoly& p) {
  CycloRational s;
  for (const auto& c : p) s += c;
  return s;
}

// Ascending-order text of a polynomial in q.
std::string poly_text(const QPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const CycloRational& c = p[k];
    if (c.is_zero()) continue;
    bool neg = false;
    std::string body;
    if (k == 0) {
      if (c.is_compound()) {
        body = "(" + c.to_string() + ")";
      } else {
        neg = c.has_leading_minus();
        body = (neg ? -c : c).to_string();
      }
    } else {
      const std::string mono = k == 1 ? "q" : "q^" + std::to_string(k);
      if (c.is_compound()) {
        body = "(" + c.to_string() + ")*" + mono;
      } else {
        neg = c.has_leading_minus();
        const CycloRational mag = neg ? -c : c;
        body = mag.is_one() ? mono : mag.to_string() + "*" + mono;
      }
    }
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Scalar parse_all() {
    Scalar v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cannot parse scalar '" + std::string(s_) + "' at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  int exponent() {
    if (accept('(')) {
      const int e = exponent();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    const bool neg = accept('-');
    const long v = integer();
    return static_cast<int>(neg ? -v : v);
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        v /= unary();
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Scalar power() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == 'z') {
      ++pos_;
      const long m = integer();
      const int k = accept('^') ? exponent() : 1;
      return Scalar::zeta(static_cast<unsigned>(m), k);
    }
    Scalar base;
    if (c == 'q') {
      ++pos_;
      base = Scalar::q();
    } else if (accept('(')) {
      base = expr();
      if (!accept(')')) fail("expected ')'");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      base = Scalar(Rational(std::string(s_.substr(start, pos_ - start))));
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    if (accept('^')) return base.pow(exponent());
    return base;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar::Scalar(long v) {
  if (v != 0) num_.emplace_back(v);
}

Scalar::Scalar(const Rational& v) {
  if (v != 0) num_.emplace_back(v);
}

Scalar::Scalar(const CycloRational& v) {
  if (!v.is_zero()) num_.push_back(v);
}

Scalar Scalar::q() { return q_power(1); }

Scalar Scalar::q_power(int k) {
  Scalar s(1);
  s.shift_ = k;
  return s;
}

Scalar Scalar::zeta(unsigned m, long k) { return Scalar(CycloRational::root_of_unity(m, k)); }

Scalar Scalar::fraction(long num, long den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

bool Scalar::is_one() const { return shift_ == 0 && poly_is_one(num_) && poly_is_one(den_); }

bool Scalar::is_constant() const {
  return is_zero() || (shift_ == 0 && num_.size() == 1 && poly_is_one(den_));
}

CycloRational Scalar::constant_value() const {
  if (!is_constant()) throw ArithmeticError("scalar depends on q: " + to_string());
  return is_zero() ? CycloRational() : num_[0];
}

Rational Scalar::rational_value() const { return constant_value().rational_value(); }

void Scalar::canonicalize() {
  trim(num_);
  if (num_.empty()) {
    shift_ = 0;
    den_ = {CycloRational(1)};
    return;
  }
  shift_ += strip_low_zeros(num_);
  shift_ -= strip_low_zeros(den_);
  if (den_.size() > 1) {
    QPoly g = poly_gcd(num_, den_);
    if (g.size() > 1) {
      num_ = poly_exact_div(num_, g);
      den_ = poly_exact_div(den_, g);
    }
  }
  if (!den_[0].is_one()) {
    const CycloRational inv = den_[0].inverse();
    num_ = poly_scale(std::move(num_), inv);
    den_ = poly_scale(std::move(den_), inv);
  }
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = poly_neg(std::move(r.num_));
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int s = std::min(shift_, o.shift_);
  if (poly_is_one(den_) && poly_is_one(o.den_)) {
    num_ = poly_add(poly_shift_up(num_, shift_ - s), poly_shift_up(o.num_, o.shift_ - s));
    shift_ = s;
    if (num_.empty()) {
      shift_ = 0;
      return *this;
    }
    shift_ += strip_low_zeros(num_);
    return *this;
  }
  if (den_ == o.den_) {
    num_ = poly_add(poly_shift_up(num_, shift_ - s), poly_shift_up(o.num_, o.shift_ - s));
  } else {
    num_ = poly_add(poly_mul(poly_shift_up(num_, shift_ - s), o.den_),
                    poly_mul(poly_shift_up(o.num_, o.shift_ - s), den_));
    den_ = poly_mul(den_, o.den_);
  }
  shift_ = s;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  shift_ += o.shift_;
  if (poly_is_one(den_) && poly_is_one(o.den_)) {
    num_ = poly_mul(num_, o.num_);
    return *this;
  }
  QPoly n1 = num_;
  QPoly d1 = den_;
  QPoly n2 = o.num_;
  QPoly d2 = o.den_;
  if (d2.size() > 1) {
    QPoly g = poly_gcd(n1, d2);
    if (g.size() > 1) {
      n1 = poly_exact_div(n1, g);
      d2 = poly_exact_div(d2, g);
    }
  }
  if (d1.size() > 1) {
    QPoly g = poly_gcd(n2, d1);
    if (g.size() > 1) {
      n2 = poly_exact_div(n2, g);
      d1 = poly_exact_div(d1, g);
    }
  }
  num_ = poly_mul(n1, n2);
  den_ = poly_mul(d1, d2);
  if (!den_[0].is_one()) {
    const CycloRational inv = den_[0].inverse();
    num_ = poly_scale(std::move(num_), inv);
    den_ = poly_scale(std::move(den_), inv);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  Scalar r;
  r.shift_ = -shift_;
  r.num_ = den_;
  r.den_ = num_;
  const CycloRational inv = r.den_[0].inverse();
  r.num_ = poly_scale(std::move(r.num_), inv);
  r.den_ = poly_scale(std::move(r.den_), inv);
  return r;
}

Scalar Scalar::conjugate() const {
  Scalar r = *this;
  for (auto& c : r.num_) c = c.conjugate();
  for (auto& c : r.den_) c = c.conjugate();
  return r;
}

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar result(1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

CycloRational Scalar::at_q_equals_one() const {
  const CycloRational d = poly_at_one(den_);
  if (d.is_zero()) throw ArithmeticError("pole at q = 1: " + to_string());
  return poly_at_one(num_) * d.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  if (poly_is_one(den_) && shift_ >= 0) return poly_text(poly_shift_up(num_, shift_));
  const QPoly n = poly_shift_up(num_, std::max(shift_, 0));
  const QPoly d = poly_shift_up(den_, std::max(-shift_, 0));
  return "(" + poly_text(n) + ")/(" + poly_text(d) + ")";
}

Scalar Scalar::parse(std::string_view text) { return Parser(text).parse_all(); }

std::optional<Scalar> checked_divide(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return std::nullopt;
  return a / b;
}

Scalar epsilon_for(int n) {
  if (n < 1) throw std::invalid_argument("epsilon_for requires n >= 1");
  const long half = static_cast<long>(n) * (n - 1) / 2;
  if (half % 2 == 0) return Scalar(1);
  return Scalar::zeta(static_cast<unsigned>(2 * n), 1);
}

}  // namespace coboundary
