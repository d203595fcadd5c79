#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "senlab/linalg/matrix.hpp"
#include "senlab/padic/scalar.hpp"

namespace senlab::field {

using padic::Scalar;

/// Presentation of K: U = Q_p[y]/(g) unramified, then K = U[u]/(E).
///
/// `unramified` holds g in ascending order including the leading 1;
/// `eisenstein` holds E the same way, each coefficient an element of U given
/// by at most deg g scalars (ascending in y).
struct LocalFieldSpec {
  long p = 0;
  std::vector<Scalar> unramified;
  std::vector<std::vector<Scalar>> eisenstein;
  long prec = padic::kDefaultPrecision;
};

/// Valuation of a field element, normalized v(p) = 1. When `exact` is false
/// the value is only a lower bound (every coefficient is zero to precision
/// or hidden beneath one that is).
struct Valuation {
  mpq_class value;
  bool exact = true;
};

class Element;
struct FieldData;

/// Shared immutable handle to a built field.
class Field {
 public:
  /// Validates the spec: g monic with irreducible reduction, E monic
  /// Eisenstein over O_U.
  static Field build(const LocalFieldSpec& spec);
  /// Q_p itself, presented with g = y - 1 and E = u - p.
  static Field qp(long p, long prec = padic::kDefaultPrecision);

  long prime() const;
  long residue_degree() const;      ///< f = deg g
  long ramification() const;        ///< e_ram = deg E
  long degree() const { return residue_degree() * ramification(); }
  long precision() const;
  const LocalFieldSpec& spec() const;

  Element zero() const;
  Element one() const;
  Element pi() const;
  Element y() const;
  /// e = E'(pi), a generator of the different.
  Element different() const;
  Element from_scalar(const Scalar& c) const;
  Element from_integer(long n) const;
  /// Element with the given flat coefficients, index j * e_ram + i for y^j u^i.
  Element from_coeffs(std::vector<Scalar> coeffs) const;
  /// U-element (coefficients in y) embedded in K.
  Element from_unramified(const std::vector<Scalar>& d) const;

  bool same(const Field& other) const;

 private:
  explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
  friend class Element;
  std::shared_ptr<const FieldData> d_;
};

/// sum c_{j,i} y^j u^i, 0 <= j < f, 0 <= i < e_ram.
class Element {
 public:
  const Field& field() const { return field_; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& coeff(long j, long i) const;

  bool is_zero() const;
  bool is_exact() const;
  /// Smallest absolute precision over the coefficients, with u^i adding i/e_ram.
  mpq_class precision() const;
  Valuation valuation() const;
  /// Valuation in units of v(pi) = 1 (an integer when exact).
  Valuation valuation_pi() const;
  Element with_precision(long prec) const;
  /// Caps the absolute precision at a rational bound (coefficient of u^i
  /// keeps ceil(bound - i/e_ram) digits).
  Element with_precision(const mpq_class& bound) const;
  bool identical(const Element& rhs) const;

  Element operator-() const;
  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Element& rhs);
  Element& operator/=(const Element& rhs);
  Element& operator*=(const Scalar& s);
  /// Coefficientwise division. Exact coefficients that do not divide
  /// exactly are first given the field's working precision.
  Element& operator/=(const Scalar& s);

  /// Matrix of multiplication by this element on the basis y^j u^i
  /// (column k holds the coordinates of x * b_k).
  linalg::Matrix<Scalar> multiplication_matrix() const;
  Scalar trace() const;
  /// Image in F_p[y]/(g mod p), ascending in y; needs v(x) >= 0.
  std::vector<long> residue() const;

  std::string to_string() const;

 private:
  Element(Field f, std::vector<Scalar> c) : field_(std::move(f)), c_(std::move(c)) {}
  friend class Field;
  void require_same(const Element& rhs) const;

  Field field_;
  std::vector<Scalar> c_;
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator*(Element a, const Element& b);
Element operator/(Element a, const Element& b);
Element operator*(Element a, const Scalar& s);
Element operator*(const Scalar& s, Element a);
Element operator/(Element a, const Scalar& s);
Element pow(const Element& x, unsigned long n);
/// x^n for a signed exponent (negative ones invert x).
Element pow(const Element& x, long n);

inline mpq_class valuation_key(const Element& x) { return x.valuation().value; }
inline Element zero_like(const Element& x) { return x.field().zero(); }
inline Element one_like(const Element& x) { return x.field().one(); }

/// Trace of a Q_p-linear map given as a matrix.
Scalar matrix_trace(const linalg::Matrix<Scalar>& m);

/// The ring homomorphism K -> L with y -> eta, u -> upsilon, after checking
/// g(eta) = 0 and E^eta(upsilon) = 0 in L to precision. Source and target
/// coincide for automorphisms.
class Homomorphism {
 public:
  Homomorphism(const Field& source, const Element& eta, const Element& upsilon);

  const Field& source() const { return source_; }
  const Field& target() const { return target_; }
  Element operator()(const Element& x) const;
  /// Matrix of the map on the Q_p bases (column k: image of b_k).
  linalg::Matrix<Scalar> matrix() const;

 private:
  Field source_;
  Field target_;
  std::vector<Element> basis_images_;
};

}  // namespace senlab::field
