#include "senlab/padic/series.hpp"

#include <algorithm>

#include "senlab/error.hpp"

namespace senlab::padic {

ConvergenceMonitor::ConvergenceMonitor(long p, mpq_class target)
    : target_(std::move(target)), window_(static_cast<std::size_t>(std::max(5L, p))) {
  const mpq_class scaled = 10 * target_;
  long cap = scaled > 0 ? static_cast<long>(mpz_class(scaled.get_num() / scaled.get_den()).get_si()) : 0;
  cap_ = std::max(cap, static_cast<long>(2 * window_));
}

bool ConvergenceMonitor::should_stop(const mpq_class& term_valuation, const mpq_class& tail_bound) {
  return record(term_valuation) && tail_bound >= target_;
}

bool ConvergenceMonitor::should_stop(const mpq_class& term_valuation) { return record(term_valuation); }

bool ConvergenceMonitor::record(const mpq_class& term_valuation) {
  ++seen_;
  recent_.push_back(std::min(term_valuation, target_));
  if (recent_.size() > window_) recent_.pop_front();
  if (seen_ > cap_) {
    std::string trail;
    for (const auto& v : recent_) trail += " " + v.get_str();
    throw ConvergenceError("series did not reach valuation " + target_.get_str() + " within " +
                           std::to_string(cap_) + " terms; last term valuations:" + trail);
  }
  return term_valuation >= target_ && recent_.size() == window_ &&
         std::is_sorted(recent_.begin(), recent_.end());
}

mpq_class exp_radius(long p) { return p == 2 ? mpq_class(1, 2) : mpq_class(1, p - 1); }

long exp_min_valuation(long p) { return p == 2 ? 2 : 1; }

namespace {

long target_precision(const Scalar& x, long prec) {
  long target = x.is_exact() ? kDefaultPrecision : x.precision();
  if (prec > 0) target = std::min(target, prec);
  return target;
}

}  // namespace

Scalar padic_exp(const Scalar& x, long prec) {
  const long p = x.prime();
  const long need = exp_min_valuation(p);
  if (x.valuation() < need) {
    if (x.is_zero()) {
      throw PrecisionError("exp: argument is zero only to precision " + std::to_string(x.precision()) +
                           ", cannot certify it lies inside the convergence radius alpha = " +
                           exp_radius(p).get_str());
    }
    throw DomainError("exp: v(x) = " + std::to_string(x.valuation()) +
                      " does not exceed the convergence radius alpha = " + exp_radius(p).get_str());
  }
  const long target = target_precision(x, prec);
  if (x.is_zero()) return Scalar::one(p).with_precision(target);

  ConvergenceMonitor monitor(p, target);
  Scalar sum = Scalar::one(p);
  Scalar power = Scalar::one(p);
  for (long n = 1;; ++n) {
    power *= x;
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    Scalar term = power / Scalar::exact(p, fact);
    sum += term;
    // v(x^m/m!) >= m v(x) - (m-1)/(p-1) for every later m
    mpq_class slope(n, p - 1);
    slope.canonicalize();
    const mpq_class tail = mpq_class(n + 1) * x.valuation() - slope;
    if (monitor.should_stop(term.valuation(), tail)) break;
  }
  return sum.with_precision(target);
}

Scalar padic_log(const Scalar& x, long prec) {
  const long p = x.prime();
  const Scalar z = x - Scalar::one(p);
  const long target = target_precision(x, prec);
  if (z.is_zero()) {
    if (z.precision() < 1) {
      throw PrecisionError("log: cannot certify v(x - 1) >= 1 at precision " + std::to_string(z.precision()));
    }
    return Scalar::zero(p, std::min<long>(z.precision(), target));
  }
  if (z.valuation() < 1) {
    throw DomainError("log: needs v(x - 1) >= 1, got " + std::to_string(z.valuation()));
  }
  ConvergenceMonitor monitor(p, target);
  Scalar sum = Scalar::zero(p);
  Scalar power = Scalar::one(p);
  for (long n = 1;; ++n) {
    power *= z;
    Scalar term = power / Scalar::exact(p, n);
    if (n % 2 == 0) term = -term;
    sum += term;
    // m v - log_p(m) increases for m >= 2, so m = n + 1 bounds the tail
    long log_floor = 0;
    for (long q = n + 1; q >= p; q /= p) ++log_floor;
    const mpq_class tail = mpq_class(n + 1) * z.valuation() - log_floor;
    if (monitor.should_stop(term.valuation(), tail)) break;
  }
  return sum.with_precision(target);
}

}  // namespace senlab::padic
