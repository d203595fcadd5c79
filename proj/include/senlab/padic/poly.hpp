#pragma once

#include <vector>

#include "senlab/padic/scalar.hpp"

namespace senlab::padic {

/// Polynomial over Q_p, coefficients in ascending degree.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Scalar> coeffs);

  /// Monic polynomial from integer coefficients c_0..c_{d-1} (leading 1 implied).
  static Poly monic_from_integers(long p, const std::vector<long>& lower, long prec);

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool monic() const { return monic_; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
  long prime() const { return coeffs_.front().prime(); }

  Scalar evaluate(const Scalar& x) const;
  Poly derivative() const;

  friend Poly operator*(const Poly& a, const Poly& b);

 private:
  std::vector<Scalar> coeffs_;
  bool monic_ = false;
};

}  // namespace senlab::padic
