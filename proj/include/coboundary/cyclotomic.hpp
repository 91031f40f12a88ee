#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace coboundary {

using Rational = mpq_class;

/// Raised on division by zero and on evaluations at a pole.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(unsigned m);

unsigned euler_phi(unsigned m);

/// Element of the cyclotomic field Q(zeta_m), stored in the power basis
/// 1, zeta, ..., zeta^(phi(m)-1) and reduced modulo the m-th cyclotomic
/// polynomial.
///
/// Orders congruent to 2 mod 4 are folded onto m/2 (the fields coincide) and
/// rational values are always stored with order 1, so mixing elements of
/// different orders promotes to the lcm without ever producing two spellings
/// of the same rational number.
class CycloRational {
 public:
  CycloRational() = default;
  CycloRational(long v);  // NOLINT(google-explicit-constructor)
  CycloRational(const Rational& v);  // NOLINT(google-explicit-constructor)

  static CycloRational root_of_unity(unsigned m, long k = 1);
  static CycloRational from_power_basis(unsigned m, std::vector<Rational> coeffs);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_rational() const { return order_ == 1; }
  /// Throws ArithmeticError unless the value lies in Q.
  Rational rational_value() const;

  /// Same value expressed in Q(zeta_m); m must be a multiple of order().
  CycloRational promoted(unsigned m) const;

  CycloRational operator-() const;
  CycloRational& operator+=(const CycloRational& o);
  CycloRational& operator-=(const CycloRational& o);
  CycloRational& operator*=(const CycloRational& o);

  friend CycloRational operator+(CycloRational a, const CycloRational& b) { return a += b; }
  friend CycloRational operator-(CycloRational a, const CycloRational& b) { return a -= b; }
  friend CycloRational operator*(CycloRational a, const CycloRational& b) { return a *= b; }

  CycloRational inverse() const;
  /// Complex conjugation: zeta -> zeta^{-1}.
  CycloRational conjugate() const;

  friend bool operator==(const CycloRational& a, const CycloRational& b);
  friend bool operator!=(const CycloRational& a, const CycloRational& b) { return !(a == b); }

  /// Canonical text, e.g. "3/2", "z4^1", "1/2 - z12^3".
  std::string to_string() const;
  /// True when to_string() has a top-level sum and needs parentheses in a product.
  bool is_compound() const;
  /// True for a single term with a negative leading coefficient.
  bool has_leading_minus() const;

 private:
  CycloRational(unsigned m, std::vector<Rational> c);
  void normalize();

  unsigned order_ = 1;
  std::vector<Rational> c_;
};

}  // namespace coboundary
