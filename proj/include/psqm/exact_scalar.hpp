#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace psqm {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
using Rational = mpq_class;

/// Thrown when an exact operation has no value (division by zero).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Builds a canonical rational num/den. Throws DomainError when den == 0.
Rational make_rational(long num, long den = 1);
Rational make_rational(const mpz_class& num, const mpz_class& den);

/// An element of Q(i, sqrt2), stored as (ra + ia*i) + (rb + ib*i)*sqrt2.
///
/// The basis {1, i, sqrt2, i*sqrt2} is linearly independent over Q, so the
/// four rational components are a unique representation and equality is
/// componentwise.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long integer);  // NOLINT(google-explicit-constructor)
  ExactScalar(Rational re);   // NOLINT(google-explicit-constructor)
  ExactScalar(Rational ra, Rational ia, Rational rb = 0, Rational ib = 0);

  static ExactScalar i();
  static ExactScalar sqrt2();
  static ExactScalar rational(long num, long den);

  const Rational& ra() const { return ra_; }
  const Rational& ia() const { return ia_; }
  const Rational& rb() const { return rb_; }
  const Rational& ib() const { return ib_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when only the rational part (ra) is non-zero.
  bool is_rational() const;
  /// Number of non-zero components among (ra, ia, rb, ib).
  int nonzero_components() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  /// Multiplicative inverse. Throws DomainError for zero.
  ExactScalar inverse() const;
  /// Complex conjugate: i -> -i, sqrt2 fixed.
  ExactScalar conj() const;
  ExactScalar pow(unsigned exponent) const;

  /// Nearest double-precision complex value, evaluated in extended precision
  /// before the final rounding.
  std::complex<double> to_complex() const;

  /// Canonical text: components "p/q", "p/q*i", "p/q*r2", "p/q*i*r2" joined
  /// by '+', zero components omitted, unit magnitudes folded ("i", "-r2").
  /// The zero scalar renders as "0".
  std::string to_string() const;

  /// Parses exactly the language produced by to_string(). Throws
  /// std::invalid_argument on malformed text.
  static ExactScalar parse(std::string_view text);

 private:
  Rational ra_, ia_, rb_, ib_;
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

/// n! as an exact integer.
mpz_class factorial(unsigned n);
/// Binomial coefficient C(n, k); zero when k > n.
mpz_class binomial(unsigned n, unsigned k);

}  // namespace psqm
