#include "coboundary/mpoly.hpp"

#include <algorithm>

namespace coboundary {

namespace {

void trim(MPoly::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

MPoly::Exponents add_exponents(const MPoly::Exponents& a, const MPoly::Exponents& b) {
  MPoly::Exponents r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

}  // namespace

MPoly::MPoly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Exponents{}, c);
}

MPoly MPoly::variable(std::size_t i) {
  MPoly p;
  Exponents e(i + 1, 0);
  e[i] = 1;
  p.terms_.emplace(std::move(e), Scalar(1));
  return p;
}

std::size_t MPoly::total_degree() const {
  std::size_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::size_t s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

void MPoly::add(const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly r;
  for (const auto& [e, c] : terms_) {
    if (var >= e.size() || e[var] == 0) continue;
    Exponents f = e;
    const long k = f[var]--;
    trim(f);
    r.add(f, c * Scalar(k));
  }
  return r;
}

Scalar MPoly::evaluate(const std::vector<Scalar>& point) const {
  Scalar total;
  for (const auto& [e, c] : terms_) {
    Scalar term = c;
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i) {
      if (e[i] == 0) continue;
      term *= i < point.size() ? point[i].pow(e[i]) : Scalar(0);
    }
    total += term;
  }
  return total;
}

std::size_t MPoly::variable_count() const {
  std::size_t v = 0;
  for (const auto& [e, c] : terms_) v = std::max(v, e.size());
  return v;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  MPoly r;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add(add_exponents(ea, eb), ca * cb);
  *this = std::move(r);
  return *this;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coeff = "(" + c.to_string() + ")";
    if (!out.empty()) out += " + ";
    out += mono.empty() ? coeff : coeff + "*" + mono;
  }
  return out;
}

}  // namespace coboundary
