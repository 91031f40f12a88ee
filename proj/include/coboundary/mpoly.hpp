#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coboundary/scalar.hpp"

namespace coboundary {

/// Commutative polynomial in x0, x1, ... over Scalar.
class MPoly {
 public:
  /// Exponent vector without trailing zeros.
  using Exponents = std::vector<std::uint16_t>;
  using Terms = std::map<Exponents, Scalar>;

  MPoly() = default;
  MPoly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  MPoly(long c) : MPoly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)

  static MPoly variable(std::size_t i);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t total_degree() const;
  MPoly derivative(std::size_t var) const;
  /// Value at x_i = point[i]; variables past the end of point count as 0.
  Scalar evaluate(const std::vector<Scalar>& point) const;
  /// Largest variable index in use plus one.
  std::size_t variable_count() const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const MPoly& b) { return a *= b; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void add(const Exponents& e, const Scalar& c);
  Terms terms_;
};

/// Rational points of {eqs = 0} in at most two variables, found by gcds and
/// resultants. nullopt when a coefficient is not rational, when there are more
/// than two variables, or when elimination cannot show the set is finite.
/// Irrational solutions are not reported.
std::optional<std::vector<std::vector<Rational>>> rational_solutions(const std::vector<MPoly>& eqs,
                                                                    std::size_t nvars);

}  // namespace coboundary
