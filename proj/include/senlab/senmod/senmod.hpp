#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "senlab/field/field.hpp"
#include "senlab/linalg/matrix.hpp"
#include "senlab/padic/newton.hpp"

namespace senlab::senmod {

using field::Element;
using field::Field;
using Matrix = linalg::Matrix<Element>;

/// Polynomial over K, ascending coefficients.
using PolyK = std::vector<Element>;

/// Weight window used by ht_weights when none is given.
inline constexpr long kDefaultWeightBound = 32;

/// (M, Theta_pi): K^d with the operator Theta given as a d x d matrix, and
/// the parameter e (by default E'(pi)).
class SenModule {
 public:
  explicit SenModule(Matrix theta);
  SenModule(Matrix theta, Element e);

  const Field& field() const { return e_.field(); }
  const Element& e() const { return e_; }
  const Matrix& theta() const { return theta_; }
  std::size_t dim() const { return theta_.rows(); }
  /// Working precision of the field.
  long precision() const { return field().precision(); }

 private:
  Matrix theta_;
  Element e_;
};

/// Rank-one module with Theta = e n (the Breuil-Kisin twist {n}).
SenModule bk_module(const Field& k, long n);

PolyK char_poly(const SenModule& m);
PolyK char_poly(const Matrix& a);

/// Newton polygon of a polynomial over K. Exact-zero low coefficients count
/// as roots at 0 (reported through `zero_roots`); coefficients that are zero
/// to precision enter as lower bounds and leave the polygon uncertified.
struct PolygonK {
  padic::NewtonPolygon polygon;
  long zero_roots = 0;
};
PolygonK newton_polygon(const PolyK& f);

struct ClassifierReport {
  bool verdict = false;
  /// Characteristic polynomial of Q = Theta^p - e^(p-1) Theta.
  PolyK q_char_poly;
  PolygonK polygon;
  /// Root valuations <= 0 (with repetition).
  std::vector<mpq_class> offending;
};

/// Nearly Hodge-Tate test: Q is topologically nilpotent iff every
/// non-leading coefficient of char(Q) has positive valuation.
ClassifierReport nearly_ht_test(const SenModule& m);

/// (n, multiplicity) for each integer n in [n_min, n_max] with e n an
/// eigenvalue of Theta; multiplicity d - rank (Theta - e n)^d.
std::vector<std::pair<long, long>> ht_weights(const SenModule& m, long n_min, long n_max);
std::vector<std::pair<long, long>> ht_weights(const SenModule& m);

struct Cohomology {
  std::vector<std::vector<Element>> h0;  ///< basis of ker Theta
  std::vector<std::vector<Element>> h1;  ///< vectors spanning a complement of im Theta
  long rank = 0;
};
Cohomology cohomology(const SenModule& m);

SenModule tensor(const SenModule& a, const SenModule& b);
SenModule dual(const SenModule& m);
SenModule bk_twist(const SenModule& m, long n);

/// sum_n b^n/n! prod_{i<n} (Theta - e i).
Matrix operator_series(const SenModule& m, const Element& b);

/// operator_series with b = (chi - 1)/e.
Matrix semilinear_descent_matrix(const SenModule& m, const padic::Scalar& chi);

}  // namespace senlab::senmod
