#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "torloop/error.hpp"

namespace torloop {

using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

std::int64_t euler_phi(std::int64_t m);

// Coefficients of the m-th cyclotomic polynomial, lowest degree first, monic.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::uint32_t m);

/// An exact element of the cyclotomic field Q(zeta_M).
///
/// Stored in the power basis 1, z, ..., z^(phi(M)-1) of z = exp(2 pi i / M),
/// always reduced modulo the M-th cyclotomic polynomial, so two scalars with
/// the same modulus are equal exactly when their coefficient vectors are.
///
/// Modulus 1 is the field of rationals. Because Q sits inside every Q(zeta_M),
/// an operand with modulus 1 is promoted to the other operand's modulus;
/// any other modulus pair must agree or the operation throws.
class CycloScalar {
 public:
  CycloScalar();
  CycloScalar(long value);  // NOLINT(google-explicit-constructor)
  CycloScalar(const Rational& value, std::uint32_t modulus = 1);
  CycloScalar(std::vector<Rational> coeffs, std::uint32_t modulus);

  /// zeta_M^e in canonical form.
  static CycloScalar root_of_unity(std::uint32_t modulus, std::int64_t e);

  std::uint32_t modulus() const { return modulus_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Throws AlgebraError unless is_rational().
  Rational rational_value() const;

  /// Re-express in Q(zeta_target); target must be a multiple of modulus().
  CycloScalar lifted(std::uint32_t target) const;

  CycloScalar inverse() const;
  CycloScalar pow(std::int64_t e) const;

  /// Smallest t >= 1 with this^t == 1, or 0 if none up to `limit`.
  std::int64_t multiplicative_order(std::int64_t limit) const;

  CycloScalar& operator+=(const CycloScalar& other);
  CycloScalar& operator-=(const CycloScalar& other);
  CycloScalar& operator*=(const CycloScalar& other);
  CycloScalar& operator/=(const CycloScalar& other);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(CycloScalar a, const CycloScalar& b) { return a *= b; }
  friend CycloScalar operator/(CycloScalar a, const CycloScalar& b) { return a /= b; }
  CycloScalar operator-() const;

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

  /// Human-readable form, e.g. "3/2", "-1 + 2*z6^1".
  std::string to_string() const;

 private:
  void promote_to(std::uint32_t modulus);
  void align(CycloScalar& other);

  std::uint32_t modulus_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloScalar& x);

/// Brings two scalars to a common modulus, treating modulus 1 as Q.
std::uint32_t common_modulus(std::uint32_t a, std::uint32_t b);

}  // namespace torloop
