#include "senlab/padic/poly.hpp"

#include "senlab/error.hpp"

namespace senlab::padic {

Poly::Poly(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw UsageError("polynomial needs at least one coefficient");
  const long p = coeffs_.front().prime();
  for (const auto& c : coeffs_) {
    if (c.prime() != p) throw UsageError("polynomial coefficients over different primes");
  }
  const Scalar& lead = coeffs_.back();
  monic_ = lead.is_exact() && !lead.is_zero() && lead.valuation() == 0 && lead.unit() == 1;
}

Poly Poly::monic_from_integers(long p, const std::vector<long>& lower, long prec) {
  std::vector<Scalar> c;
  c.reserve(lower.size() + 1);
  for (long v : lower) c.push_back(Scalar::from_integer(p, v, prec));
  c.push_back(Scalar::one(p));
  return Poly(std::move(c));
}

Scalar Poly::evaluate(const Scalar& x) const {
  Scalar acc = Scalar::zero(x.prime());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  const long p = prime();
  if (coeffs_.size() == 1) return Poly({Scalar::zero(p)});
  std::vector<Scalar> d;
  d.reserve(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    d.push_back(coeffs_[i] * Scalar::exact(p, static_cast<long>(i)));
  }
  return Poly(std::move(d));
}

Poly operator*(const Poly& a, const Poly& b) {
  const long p = a.prime();
  std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(p));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(c));
}

}  // namespace senlab::padic
