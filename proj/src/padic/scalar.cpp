#include "senlab/padic/scalar.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

#include "senlab/error.hpp"

namespace senlab::padic {

namespace {

long clamp_precision(long n) { return std::min(n, kExactPrecision); }

void require_same_prime(const Scalar& x, const Scalar& y) {
  if (x.prime() != y.prime()) {
    throw UsageError("p-adic operands over different primes (" + std::to_string(x.prime()) +
                     " vs " + std::to_string(y.prime()) + ")");
  }
}

}  // namespace

mpz_class prime_power(long p, long k) {
  // Powers of the last prime used are cached per thread; the desk-scale
  // workloads hammer a single prime.
  thread_local long cached_p = 0;
  thread_local std::vector<mpz_class> cache;
  if (k < 0) throw UsageError("negative exponent in prime_power");
  if (cached_p != p) {
    cached_p = p;
    cache.clear();
    cache.emplace_back(1);
  }
  if (k < 512) {
    while (static_cast<long>(cache.size()) <= k) cache.push_back(cache.back() * p);
    return cache[static_cast<std::size_t>(k)];
  }
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

long factorial_valuation(long p, long n) {
  long v = 0;
  for (long q = n / p; q > 0; q /= p) v += q;
  return v;
}

long integer_valuation(long p, mpz_class n) {
  if (n == 0) throw UsageError("valuation of the integer 0");
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

Scalar Scalar::normalize(long p, mpz_class m, long shift, long prec) {
  prec = clamp_precision(prec);
  if (m == 0) return Scalar(p, true, 0, 0, prec);
  mpz_class pz(p);
  long v = shift + static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
  if (v >= prec) return Scalar(p, true, 0, 0, prec);
  if (prec < kExactPrecision) {
    mpz_class mod = prime_power(p, prec - v);
    mpz_fdiv_r(m.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
  }
  return Scalar(p, false, v, std::move(m), prec);
}

Scalar Scalar::zero(long p, long prec) { return Scalar(p, true, 0, 0, clamp_precision(prec)); }

Scalar Scalar::one(long p) { return Scalar(p, false, 0, 1, kExactPrecision); }

Scalar Scalar::exact(long p, const mpz_class& n) { return normalize(p, n, 0, kExactPrecision); }

Scalar Scalar::from_integer(long p, const mpz_class& n, long prec) { return normalize(p, n, 0, prec); }

Scalar Scalar::from_integer_relative(long p, const mpz_class& n, long rel_prec) {
  if (n == 0) return zero(p);
  return normalize(p, n, 0, integer_valuation(p, n) + rel_prec);
}

Scalar Scalar::from_rational(long p, const mpq_class& q, long prec) {
  if (q == 0) return zero(p, prec);
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  mpz_class pz(p);
  long v = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  if (den == 1) return normalize(p, num, v, prec);
  prec = clamp_precision(prec);
  if (prec >= kExactPrecision) {
    throw PrecisionError("rational " + q.get_str() + " has no exact p-adic digit expansion; "
                         "give a finite precision");
  }
  if (v >= prec) return zero(p, prec);
  mpz_class mod = prime_power(p, prec - v);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return normalize(p, num * inv, v, prec);
}

Scalar Scalar::from_parts(long p, long val, const mpz_class& unit, long prec) {
  return normalize(p, unit, val, prec);
}

mpq_class Scalar::lift() const {
  if (zero_) return 0;
  mpq_class r(unit_);
  if (val_ >= 0) {
    r *= prime_power(p_, val_);
  } else {
    r /= prime_power(p_, -val_);
  }
  r.canonicalize();
  return r;
}

Scalar Scalar::with_precision(long prec) const {
  if (prec >= prec_) return *this;
  if (zero_) return zero(p_, prec);
  return normalize(p_, unit_, val_, prec);
}

bool Scalar::identical(const Scalar& rhs) const {
  return p_ == rhs.p_ && zero_ == rhs.zero_ && prec_ == rhs.prec_ &&
         (zero_ || (val_ == rhs.val_ && unit_ == rhs.unit_));
}

Scalar Scalar::operator-() const {
  if (zero_) return *this;
  return normalize(p_, -unit_, val_, prec_);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  require_same_prime(*this, rhs);
  const long n = std::min(prec_, rhs.prec_);
  const bool lhs_live = !zero_ && val_ < n;
  const bool rhs_live = !rhs.zero_ && rhs.val_ < n;
  if (!lhs_live && !rhs_live) return *this = zero(p_, n);
  if (!rhs_live) return *this = normalize(p_, unit_, val_, n);
  if (!lhs_live) return *this = normalize(p_, rhs.unit_, rhs.val_, n);
  const long k = std::min(val_, rhs.val_);
  mpz_class m = unit_ * prime_power(p_, val_ - k) + rhs.unit_ * prime_power(p_, rhs.val_ - k);
  return *this = normalize(p_, std::move(m), k, n);
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  require_same_prime(*this, rhs);
  const long n = clamp_precision(std::min(prec_ + rhs.valuation(), rhs.prec_ + valuation()));
  if (zero_ || rhs.zero_) return *this = zero(p_, n);
  return *this = normalize(p_, unit_ * rhs.unit_, val_ + rhs.val_, n);
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  require_same_prime(*this, rhs);
  if (rhs.zero_) {
    throw PrecisionError("division by a value that is zero to precision " +
                         std::to_string(rhs.prec_));
  }
  const long vy = rhs.val_;
  if (zero_) return *this = zero(p_, prec_ - vy);
  if (is_exact() && rhs.is_exact()) {
    if (mpz_divisible_p(unit_.get_mpz_t(), rhs.unit_.get_mpz_t()) == 0) {
      throw PrecisionError("exact quotient " + to_string() + " / " + rhs.to_string() +
                           " needs a finite precision");
    }
    mpz_class q = unit_ / rhs.unit_;
    return *this = normalize(p_, std::move(q), val_ - vy, kExactPrecision);
  }
  const long n = clamp_precision(std::min(prec_ - vy, rhs.prec_ - 2 * vy + val_));
  const long v = val_ - vy;
  if (v >= n) return *this = zero(p_, n);
  mpz_class mod = prime_power(p_, n - v);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), rhs.unit_.get_mpz_t(), mod.get_mpz_t());
  return *this = normalize(p_, unit_ * inv, v, n);
}

Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

Scalar pow(const Scalar& x, unsigned long n) {
  Scalar result = Scalar::one(x.prime());
  Scalar base = x;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (zero_) {
    os << "O(" << p_ << "^" << prec_ << ")";
    return os.str();
  }
  os << unit_.get_str();
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  if (!is_exact()) os << " + O(" << p_ << "^" << prec_ << ")";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

}  // namespace senlab::padic
