#include "senlab/picard/picard.hpp"

#include "senlab/error.hpp"

namespace senlab::picard {

mpq_class BoundaryValue::rational() const {
  mpq_class q(num, padic::prime_power(p, den_pow));
  q.canonicalize();
  return q;
}

std::string BoundaryValue::to_string() const {
  if (is_zero()) return "0";
  return num.get_str() + "/" + std::to_string(p) + "^" + std::to_string(den_pow);
}

BoundaryValue reduce_mod_zp(long p, const mpq_class& q0) {
  mpq_class q = q0;
  q.canonicalize();
  BoundaryValue r;
  r.p = p;
  if (q == 0) return r;
  mpz_class den = q.get_den();
  long k = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
    den /= p;
    ++k;
  }
  if (k == 0) return r;
  // q = a / (p^k d) with gcd(d, p) = 1; the class is a d^-1 mod p^k
  const mpz_class pk = padic::prime_power(p, k);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t());
  mpz_class n = q.get_num() * inv;
  mpz_fdiv_r(n.get_mpz_t(), n.get_mpz_t(), pk.get_mpz_t());
  r.num = n;
  r.den_pow = k;
  return r;
}

BoundaryValue reduce_mod_zp(const Scalar& s) {
  if (s.precision() < 0) {
    throw PrecisionError("value known only modulo p^" + std::to_string(s.precision()) +
                         ", too coarse to determine its class mod Z_p");
  }
  if (s.is_zero() || s.valuation() >= 0) return BoundaryValue{s.prime(), 0, 0};
  return reduce_mod_zp(s.prime(), s.lift());
}

BoundaryValue operator+(const BoundaryValue& a, const BoundaryValue& b) {
  if (a.p != b.p && !a.is_zero() && !b.is_zero()) throw UsageError("Q_p/Z_p values over different primes");
  return reduce_mod_zp(a.p ? a.p : b.p, a.rational() + b.rational());
}

BoundaryValue operator*(const mpz_class& c, const BoundaryValue& a) {
  return reduce_mod_zp(a.p, mpq_class(c) * a.rational());
}

BoundaryValue boundary(const Element& x) {
  const long p = x.field().prime();
  const Scalar t = x.trace();
  if (t.precision() < 1) {
    throw PrecisionError("trace known only modulo p^" + std::to_string(t.precision()) +
                         "; the boundary needs it modulo p");
  }
  BoundaryValue r = reduce_mod_zp(t / Scalar::exact(p, p));
  r.p = p;
  return r;
}

bool in_picard_image(const Element& x) { return boundary(x).is_zero(); }

KernelLattice kernel_lattice(const Field& k, long s) {
  if (s < 0) throw UsageError("lattice exponent s must be >= 0");
  const long p = k.prime();
  KernelLattice out;
  out.s = s;
  const Element scale = field::pow(k.pi(), -s);
  const std::size_t n = static_cast<std::size_t>(k.degree());
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::vector<Scalar> c(n, Scalar::zero(p));
    c[idx] = Scalar::one(p);
    const Element b = k.from_coeffs(c) * scale;
    out.lattice_basis.push_back(b);
    out.traces.push_back(b.trace());
  }
  long best = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar& t = out.traces[i];
    if (!t.is_zero() && t.valuation() < best) {
      best = t.valuation();
      out.pivot = static_cast<long>(i);
    }
  }
  for (const auto& t : out.traces) {
    if (t.is_zero() && t.precision() < best) {
      throw PrecisionError("trace vector known only to p^" + std::to_string(t.precision()) +
                           ", which cannot fix the Smith pivot");
    }
  }
  if (out.pivot < 0) {
    out.kernel_basis = out.lattice_basis;
    return out;
  }
  const std::size_t piv = static_cast<std::size_t>(out.pivot);
  const Scalar& tp = out.traces[piv];
  out.image_order = 1 - best;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == piv) {
      out.kernel_basis.push_back(out.lattice_basis[i] * Scalar::exact(p, padic::prime_power(p, out.image_order)));
      continue;
    }
    const Scalar& t = out.traces[i];
    if (t.is_zero()) {
      out.kernel_basis.push_back(out.lattice_basis[i]);
      continue;
    }
    Scalar c = t.with_precision(std::min(t.precision(), k.precision())) / tp;
    out.kernel_basis.push_back(out.lattice_basis[i] - out.lattice_basis[piv] * c);
  }
  return out;
}

Element surjectivity_witness(const Field& k, long order_exponent) {
  if (order_exponent < 0) throw UsageError("order exponent must be >= 0");
  const long p = k.prime();
  if (order_exponent == 0) return k.zero();
  const KernelLattice base = kernel_lattice(k, 0);
  std::size_t piv = 0;
  long mu = 0;
  bool found = false;
  for (std::size_t i = 0; i < base.traces.size(); ++i) {
    const Scalar& t = base.traces[i];
    if (!t.is_zero() && (!found || t.valuation() < mu)) {
      piv = i;
      mu = t.valuation();
      found = true;
    }
  }
  if (!found) throw PrecisionError("trace form vanishes to working precision on O_K");
  const long shift = 1 - order_exponent - mu;
  const Scalar c = shift >= 0 ? Scalar::exact(p, padic::prime_power(p, shift))
                              : Scalar::from_rational(p, mpq_class(1, padic::prime_power(p, -shift)), k.precision());
  return base.lattice_basis[piv] * c;
}

FunctorialityReport functoriality_check(const field::Homomorphism& h, const Element& x) {
  if (!x.field().same(h.source())) throw UsageError("element does not live in the source field");
  if (h.target().degree() % h.source().degree() != 0) throw UsageError("incompatible tower data: [L:Q_p] not divisible by [K:Q_p]");
  FunctorialityReport r;
  r.relative_degree = h.target().degree() / h.source().degree();
  r.lhs = boundary(h(x));
  r.rhs = mpz_class(r.relative_degree) * boundary(x);
  r.holds = r.lhs == r.rhs;
  return r;
}

}  // namespace senlab::picard
