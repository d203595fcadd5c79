#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "senlab/field/field.hpp"

namespace senlab::picard {

using field::Element;
using field::Field;
using padic::Scalar;

/// num / p^den_pow in Q_p/Z_p, with 0 <= num < p^den_pow and p not dividing
/// num unless the value is 0 (then den_pow = 0).
struct BoundaryValue {
  long p = 0;
  mpz_class num = 0;
  long den_pow = 0;

  bool is_zero() const { return den_pow == 0; }
  /// The order is p^den_pow.
  long order_exponent() const { return den_pow; }
  mpq_class rational() const;
  std::string to_string() const;
  bool operator==(const BoundaryValue& rhs) const = default;
};

/// Class of a rational with p-power denominator (or any p-adic rational) mod Z_p.
BoundaryValue reduce_mod_zp(long p, const mpq_class& q);
/// Class of a p-adic scalar mod Z_p; needs the scalar known mod Z_p.
BoundaryValue reduce_mod_zp(const Scalar& s);

BoundaryValue operator+(const BoundaryValue& a, const BoundaryValue& b);
BoundaryValue operator*(const mpz_class& c, const BoundaryValue& a);

/// (1/p) Tr_(K|Q_p)(x) mod Z_p.
BoundaryValue boundary(const Element& x);

/// Whether x lies in the kernel of the boundary map (Tr x in p Z_p).
bool in_picard_image(const Element& x);

struct KernelLattice {
  long s = 0;
  /// Basis of pi^(-s) O_K: pi^(-s) y^j u^i in coefficient order.
  std::vector<Element> lattice_basis;
  /// Traces of the lattice basis.
  std::vector<Scalar> traces;
  /// Basis of the sublattice where the boundary vanishes.
  std::vector<Element> kernel_basis;
  /// Index of the pivot generator in lattice_basis (-1 when the whole
  /// lattice is in the kernel).
  long pivot = -1;
  /// boundary(pi^(-s) O_K) is cyclic of order p^image_order.
  long image_order = 0;
};

KernelLattice kernel_lattice(const Field& k, long s);

/// Some x in O_K p^(1-k) with boundary of exact order p^k.
Element surjectivity_witness(const Field& k, long order_exponent);

struct FunctorialityReport {
  BoundaryValue lhs;  ///< boundary over the target of h(x)
  BoundaryValue rhs;  ///< [L:K] times the boundary over the source of x
  long relative_degree = 0;
  bool holds = false;
};

/// Compares boundary_L(h(x)) with [L:K] boundary_K(x) for an embedding h: K -> L.
FunctorialityReport functoriality_check(const field::Homomorphism& h, const Element& x);

}  // namespace senlab::picard
