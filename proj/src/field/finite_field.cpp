#include "senlab/field/finite_field.hpp"

#include <utility>

#include "senlab/error.hpp"

namespace senlab::field {

namespace {

long mulmod(long a, long b, long p) { return static_cast<long>((static_cast<__int128>(a) * b) % p); }

long invmod(long a, long p) {
  long t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    const long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw DomainError("not invertible modulo p");
  return t < 0 ? t + p : t;
}

}  // namespace

FpPoly fp_trim(FpPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, long p) {
  FpPoly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = (c[i] - b[i] + p) % p;
  return fp_trim(std::move(c));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  return fp_trim(std::move(c));
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, long p) {
  a = fp_trim(std::move(a));
  if (m.empty()) throw DomainError("polynomial division by zero over F_p");
  const long lead_inv = invmod(m.back(), p);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm && !a.empty()) {
    const long c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] - mulmod(c, m[i], p) + p) % p;
    a = fp_trim(std::move(a));
  }
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FpPoly fp_frobenius(const FpPoly& base, long k, const FpPoly& m, long p) {
  FpPoly x = fp_mod(base, m, p);
  for (long step = 0; step < k; ++step) {
    FpPoly acc{1}, sq = x;
    for (long e = p; e > 0; e >>= 1) {
      if (e & 1) acc = fp_mod(fp_mul(acc, sq, p), m, p);
      if (e > 1) sq = fp_mod(fp_mul(sq, sq, p), m, p);
    }
    x = std::move(acc);
  }
  return x;
}

bool fp_irreducible(const FpPoly& m, long p) {
  const FpPoly f = fp_trim(m);
  if (f.size() < 2) return false;
  const long d = static_cast<long>(f.size()) - 1;
  const FpPoly y{0, 1};
  FpPoly power = fp_mod(y, f, p);
  for (long i = 1; i <= d / 2; ++i) {
    power = fp_frobenius(power, 1, f, p);
    if (fp_gcd(f, fp_sub(power, y, p), p).size() > 1) return false;
  }
  return true;
}

}  // namespace senlab::field
