#include <algorithm>

#include "coboundary/mpoly.hpp"

namespace coboundary {

namespace {

// Univariate polynomial over Q, low degree first, no trailing zeros.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly add(UPoly a, const UPoly& b, int sign = 1) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign > 0 ? b[i] : Rational(-b[i]);
  trim(a);
  return a;
}

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly remainder(UPoly a, const UPoly& b) {
  while (!a.empty() && deg(a) >= deg(b)) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly monic(UPoly p) {
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Rational eval(const UPoly& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<mpz_class> divisors(mpz_class v) {
  v = abs(v);
  std::vector<mpz_class> out;
  for (mpz_class k = 1; k * k <= v; ++k) {
    if (v % k != 0) continue;
    out.push_back(k);
    if (k * k != v) out.push_back(v / k);
  }
  return out;
}

// Rational roots by the rational root test; gives up (empty) on huge coefficients.
std::vector<Rational> rational_roots(UPoly p) {
  std::vector<Rational> roots;
  if (p.empty()) return roots;
  std::size_t z = 0;
  while (z < p.size() && p[z] == 0) ++z;
  if (z > 0) {
    roots.push_back(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<long>(z));
  }
  if (deg(p) < 1) return roots;
  mpz_class den = 1;
  for (const auto& c : p) den = lcm(den, mpz_class(c.get_den()));
  std::vector<mpz_class> ic;
  for (const auto& c : p) ic.push_back(mpz_class(c * den));
  const mpz_class limit("1000000000");
  if (abs(ic.front()) > limit || abs(ic.back()) > limit) return roots;
  for (const auto& num : divisors(ic.front()))
    for (const auto& dd : divisors(ic.back()))
      for (int sign : {1, -1}) {
        Rational x(num * sign, dd);
        x.canonicalize();
        if (eval(p, x) == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Bivariate polynomial as a polynomial in y with coefficients in Q[x].
using BPoly = std::vector<UPoly>;

void trim(BPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

std::optional<BPoly> to_bivariate(const MPoly& f) {
  BPoly out;
  for (const auto& [e, c] : f.terms()) {
    if (!c.is_constant() || e.size() > 2) return std::nullopt;
    Rational v;
    try {
      v = c.rational_value();
    } catch (const ArithmeticError&) {
      return std::nullopt;
    }
    const std::size_t ex = e.size() > 0 ? e[0] : 0;
    const std::size_t ey = e.size() > 1 ? e[1] : 0;
    if (out.size() <= ey) out.resize(ey + 1);
    if (out[ey].size() <= ex) out[ey].resize(ex + 1, Rational(0));
    out[ey][ex] += v;
  }
  for (auto& u : out) trim(u);
  trim(out);
  return out;
}

UPoly det(std::vector<std::vector<UPoly>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  UPoly total;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].empty()) continue;
    std::vector<std::vector<UPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<UPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    total = add(total, mul(m[0][j], det(std::move(minor))), j % 2 == 0 ? 1 : -1);
  }
  return total;
}

// Sylvester resultant with respect to y; both of positive y-degree.
UPoly resultant_y(const BPoly& a, const BPoly& b) {
  const std::size_t da = a.size() - 1, db = b.size() - 1;
  const std::size_t n = da + db;
  std::vector<std::vector<UPoly>> m(n, std::vector<UPoly>(n));
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t k = 0; k <= da; ++k) m[r][r + k] = a[da - k];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t k = 0; k <= db; ++k) m[db + r][r + k] = b[db - k];
  return det(std::move(m));
}

UPoly substitute_x(const BPoly& p, const Rational& x) {
  UPoly out;
  for (const auto& c : p) out.push_back(eval(c, x));
  trim(out);
  return out;
}

UPoly gcd_all(const std::vector<UPoly>& ps) {
  UPoly g;
  for (const auto& p : ps) g = g.empty() ? monic(p) : gcd(g, p);
  return g;
}

}  // namespace

std::optional<std::vector<std::vector<Rational>>> rational_solutions(const std::vector<MPoly>& eqs,
                                                                    std::size_t nvars) {
  if (nvars > 2) return std::nullopt;
  std::vector<BPoly> polys;
  for (const auto& e : eqs) {
    if (e.variable_count() > nvars) return std::nullopt;
    auto b = to_bivariate(e);
    if (!b) return std::nullopt;
    if (!b->empty()) polys.push_back(std::move(*b));
  }
  std::vector<std::vector<Rational>> points;
  if (polys.empty()) {
    if (nvars == 0) points.emplace_back();
    else return std::nullopt;
    return points;
  }
  // Univariate candidates in x.
  std::vector<UPoly> ux;
  for (const auto& p : polys)
    if (p.size() == 1) ux.push_back(p[0]);
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (polys[i].size() < 2 || polys[j].size() < 2) continue;
      UPoly r = resultant_y(polys[i], polys[j]);
      if (!r.empty()) ux.push_back(std::move(r));
    }
  if (ux.empty()) return std::nullopt;
  const UPoly gx = gcd_all(ux);
  if (deg(gx) == 0) return points;
  if (nvars == 0) return points;
  for (const auto& x : rational_roots(gx)) {
    if (nvars == 1) {
      points.push_back({x});
      continue;
    }
    std::vector<UPoly> uy;
    for (const auto& p : polys) {
      UPoly s = substitute_x(p, x);
      if (!s.empty()) uy.push_back(std::move(s));
    }
    if (uy.empty()) return std::nullopt;  // a whole line x = const
    const UPoly gy = gcd_all(uy);
    for (const auto& y : rational_roots(gy)) points.push_back({x, y});
  }
  return points;
}

}  // namespace coboundary
