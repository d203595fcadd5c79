#pragma once

#include <gmpxx.h>

#include <deque>

#include "senlab/padic/scalar.hpp"

namespace senlab::padic {

/// Stop rule shared by every summed series in the library.
///
/// Summation may stop once the latest term has valuation >= target and the
/// last max(5, p) term valuations (capped at target) are nondecreasing.
/// More than max(10 * target, 2 * window) terms is a ConvergenceError.
class ConvergenceMonitor {
 public:
  ConvergenceMonitor(long p, mpq_class target);

  /// Records the next term's valuation; true when summation may stop.
  /// `tail_bound`, when known, is a lower bound on the valuation of every
  /// later term; stopping then also requires tail_bound >= target.
  bool should_stop(const mpq_class& term_valuation);
  bool should_stop(const mpq_class& term_valuation, const mpq_class& tail_bound);

  long terms_seen() const { return seen_; }
  const mpq_class& target() const { return target_; }

 private:
  bool record(const mpq_class& term_valuation);

  mpq_class target_;
  std::size_t window_;
  long cap_;
  long seen_ = 0;
  std::deque<mpq_class> recent_;
};

/// alpha = 1/(p-1) for odd p, 1/2 for p = 2: exp converges on v(x) > alpha.
mpq_class exp_radius(long p);

/// Smallest integer valuation strictly above the radius.
long exp_min_valuation(long p);

/// exp(x) = sum x^n/n!, for v(x) > alpha. `prec` (if > 0) caps the target
/// precision; otherwise the precision of x is used.
Scalar padic_exp(const Scalar& x, long prec = 0);

/// log(x) = sum (-1)^(n-1) (x-1)^n / n, for v(x - 1) >= 1.
Scalar padic_log(const Scalar& x, long prec = 0);

}  // namespace senlab::padic
