#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace senlab::padic {

/// Default absolute working precision, in p-adic digits.
inline constexpr long kDefaultPrecision = 50;

/// Precision value marking a scalar as exact (an integer times a power of
/// p, known to all digits). Arithmetic clamps precisions at this ceiling.
inline constexpr long kExactPrecision = 1L << 40;

/// p^k as a GMP integer, k >= 0.
mpz_class prime_power(long p, long k);

/// v_p(n!) by Legendre's formula.
long factorial_valuation(long p, long n);

/// v_p of a nonzero integer.
long integer_valuation(long p, mpz_class n);

/// An element of Q_p known modulo p^N (absolute precision N).
///
/// Either "zero to precision N" or p^v * u with u a p-adic unit stored as an
/// integer representative in [1, p^(N-v)). Exact scalars (N at the ceiling)
/// keep u as an ordinary integer and are never reduced.
class Scalar {
 public:
  static Scalar zero(long p, long prec = kExactPrecision);
  static Scalar one(long p);
  /// Integer known exactly.
  static Scalar exact(long p, const mpz_class& n);
  /// Integer reduced to absolute precision `prec`.
  static Scalar from_integer(long p, const mpz_class& n, long prec);
  /// Integer with `rel_prec` digits of relative precision; used for the
  /// constants n!, binomials and friends that appear as divisors.
  static Scalar from_integer_relative(long p, const mpz_class& n, long rel_prec);
  /// Rational with p-power or p-free denominator at absolute precision.
  static Scalar from_rational(long p, const mpq_class& q, long prec);
  /// p^val * unit + O(p^prec); `unit` need not be reduced, and p-factors in
  /// it are moved into the valuation.
  static Scalar from_parts(long p, long val, const mpz_class& unit, long prec);

  long prime() const { return p_; }
  bool is_zero() const { return zero_; }
  bool is_exact() const { return prec_ >= kExactPrecision; }
  long precision() const { return prec_; }
  /// Exact valuation for nonzero values; the lower bound N for zero.
  long valuation() const { return zero_ ? prec_ : val_; }
  /// Digits of relative precision (0 for zero values).
  long relative_precision() const { return zero_ ? 0 : prec_ - val_; }
  const mpz_class& unit() const { return unit_; }
  /// The rational number p^v * unit (0 for zero values).
  mpq_class lift() const;
  /// Same value with absolute precision min(N, prec).
  Scalar with_precision(long prec) const;
  /// True when the stored representation agrees with `rhs` digit for digit,
  /// including the precision.
  bool identical(const Scalar& rhs) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  std::string to_string() const;

 private:
  Scalar(long p, bool zero, long val, mpz_class unit, long prec)
      : p_(p), zero_(zero), val_(val), unit_(std::move(unit)), prec_(prec) {}
  static Scalar normalize(long p, mpz_class m, long shift, long prec);

  long p_;
  bool zero_;
  long val_;
  mpz_class unit_;
  long prec_;
};

Scalar operator+(Scalar lhs, const Scalar& rhs);
Scalar operator-(Scalar lhs, const Scalar& rhs);
Scalar operator*(Scalar lhs, const Scalar& rhs);
Scalar operator/(Scalar lhs, const Scalar& rhs);
Scalar pow(const Scalar& x, unsigned long n);

/// Valuation key used by pivoting and polygons: the valuation of a nonzero
/// value, or the precision bound of a zero one.
inline mpq_class valuation_key(const Scalar& x) { return mpq_class(x.valuation()); }

inline Scalar zero_like(const Scalar& x) { return Scalar::zero(x.prime()); }
inline Scalar one_like(const Scalar& x) { return Scalar::one(x.prime()); }

std::ostream& operator<<(std::ostream& os, const Scalar& x);

}  // namespace senlab::padic
