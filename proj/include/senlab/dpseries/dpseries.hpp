#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "senlab/field/field.hpp"
#include "senlab/linalg/matrix.hpp"

namespace senlab::dpseries {

using field::Element;
using field::Field;

/// Default truncation order.
inline constexpr long kDefaultTrunc = 32;

/// sum_{n <= N} c_n a^n/n! in the divided-power algebra over O_K, with the
/// group law a + b + e ab.
///
/// Two kinds of value share the type. A polynomial (no tail floor) is exactly
/// the stored sum. A series carries a floor F: every coefficient past N has
/// valuation >= F, and coefficients past `complete_degree` are partial sums
/// missing a term of valuation >= F.
class DPSeries {
 public:
  /// Polynomial with the given coefficients; N = coeffs.size() - 1.
  DPSeries(Element e, std::vector<Element> coeffs);
  DPSeries(Element e, std::vector<Element> coeffs, std::optional<mpq_class> tail_floor, long complete_degree);

  static DPSeries zero(const Element& e, long trunc);
  static DPSeries one(const Element& e, long trunc);
  /// The coordinate a.
  static DPSeries variable(const Element& e, long trunc);
  /// t = 1 + e a.
  static DPSeries t(const Element& e, long trunc);

  const Field& field() const { return e_.field(); }
  const Element& e() const { return e_; }
  long trunc() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Element>& coeffs() const { return c_; }
  const Element& coeff(long n) const { return c_[static_cast<std::size_t>(n)]; }
  bool polynomial() const { return !tail_floor_; }
  const std::optional<mpq_class>& tail_floor() const { return tail_floor_; }
  /// Coefficients up to this degree are complete (to their precision).
  long complete_degree() const { return complete_; }
  /// Advisory: every stored coefficient is known to lie in O_K.
  bool integral() const;
  /// Smallest lower bound on the valuation of any coefficient, stored or not.
  mpq_class floor() const;

  DPSeries truncated(long trunc) const;

 private:
  Element e_;
  std::vector<Element> c_;
  std::optional<mpq_class> tail_floor_;
  long complete_;
};

DPSeries operator+(const DPSeries& f, const DPSeries& g);
DPSeries operator-(const DPSeries& f, const DPSeries& g);
/// Binomial convolution (f g)_n = sum C(n, i) f_i g_(n-i).
DPSeries operator*(const DPSeries& f, const DPSeries& g);

/// Theta = (1 + e a) d/da: out_n = c_(n+1) + e n c_n.
DPSeries sen_theta(const DPSeries& f);

/// The solution with c_0 = 0 of sen_theta(c) = g.
DPSeries solve_theta(const DPSeries& g);

/// f(a + b + e a b): c'_m = sum_k c_(m+k) (1 + e b)^m b^k/k!.
DPSeries coaction(const DPSeries& f, const Element& b);

/// log(1 + e a)/e: c_0 = 0, c_n = (-e)^(n-1) (n-1)!.
DPSeries log_t(const Element& e, long trunc);
DPSeries log_t(const Field& k, long trunc);

enum class Direction { ToGsharp, FromGsharp };

/// Composition with log(1 + e a)/e (ToGsharp) or (exp(e a) - 1)/e (FromGsharp).
DPSeries gsharp_transport(const DPSeries& f, Direction direction);

/// Matrix of Theta on polynomials of degree <= N in the basis a^n/n!
/// (acting on coefficient columns).
linalg::Matrix<Element> theta_matrix(const Element& e, long trunc);

}  // namespace senlab::dpseries
