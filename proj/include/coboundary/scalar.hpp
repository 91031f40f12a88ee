#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "coboundary/cyclotomic.hpp"

namespace coboundary {

/// Polynomial in q with cyclotomic coefficients, lowest degree first, no
/// trailing zeros.
using QPoly = std::vector<CycloRational>;

/// Element of Q(zeta_m)(q), q a formal real parameter.
///
/// Canonical form: value = q^shift * num(q) / den(q) with num(0) != 0 (or
/// num == 0), den(0) == 1 and gcd(num, den) == 1. Two scalars are equal iff
/// their canonical forms agree term by term.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v);  // NOLINT(google-explicit-constructor)
  Scalar(const CycloRational& v);  // NOLINT(google-explicit-constructor)

  static Scalar q();
  static Scalar q_power(int k);
  static Scalar zeta(unsigned m, long k = 1);
  static Scalar fraction(long num, long den);

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  /// True when the value does not depend on q.
  bool is_constant() const;
  /// Throws ArithmeticError unless the value is a constant.
  CycloRational constant_value() const;
  /// Throws ArithmeticError unless the value is a rational constant.
  Rational rational_value() const;

  int shift() const { return shift_; }
  const QPoly& numerator() const { return num_; }
  const QPoly& denominator() const { return den_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws ArithmeticError on zero.
  Scalar inverse() const;
  /// Fixes q, sends zeta_m to zeta_m^{-1}.
  Scalar conjugate() const;
  Scalar pow(int k) const;

  /// Formal specialization q -> 1; throws ArithmeticError at a pole.
  CycloRational at_q_equals_one() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text such as "(1 - q^2)/(q)" or "z4^1*q".
  std::string to_string() const;
  /// Inverse of to_string(); also accepts ordinary infix input.
  static Scalar parse(std::string_view text);

 private:
  void canonicalize();

  int shift_ = 0;
  QPoly num_;
  QPoly den_{CycloRational(1)};
};

/// Division returning nullopt instead of throwing.
std::optional<Scalar> checked_divide(const Scalar& a, const Scalar& b);

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

/// epsilon with epsilon^n = (-1)^{n(n-1)/2}: the root of smallest argument in [0, 2pi).
Scalar epsilon_for(int n);

}  // namespace coboundary
