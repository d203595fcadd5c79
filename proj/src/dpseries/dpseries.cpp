#include "senlab/dpseries/dpseries.hpp"

#include <algorithm>

#include "senlab/error.hpp"
#include "senlab/padic/series.hpp"

namespace senlab::dpseries {

using padic::Scalar;

namespace {

Scalar binomial(long p, long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar::exact(p, b);
}

bool exact_zero(const Element& x) { return x.is_zero() && x.is_exact(); }

long polynomial_degree(const DPSeries& f) {
  for (long n = f.trunc(); n >= 0; --n)
    if (!exact_zero(f.coeff(n))) return n;
  return -1;
}

void require_compatible(const DPSeries& f, const DPSeries& g) {
  if (!f.field().same(g.field())) throw UsageError("divided-power series over different fields");
  if (!(f.e() - g.e()).is_zero()) throw UsageError("divided-power series with different parameters e");
}

// min over k >= k0 of k v(b) - v_p(k!), for v(b) > 1/(p - 1)
mpq_class tail_decay(long p, const mpq_class& vb, long k0) {
  mpq_class alpha(1, p - 1);
  alpha.canonicalize();
  const mpq_class gain = vb - alpha;
  bool have = false;
  mpq_class best;
  for (long k = std::max(k0, 0L);; ++k) {
    const mpq_class v = mpq_class(k) * vb - padic::factorial_valuation(p, k);
    if (!have || v < best) best = v;
    have = true;
    // later terms exceed k * gain
    if (mpq_class(k + 1) * gain >= best) break;
  }
  return best;
}

}  // namespace

DPSeries::DPSeries(Element e, std::vector<Element> coeffs) : DPSeries(std::move(e), std::move(coeffs), std::nullopt, 0) {
  complete_ = trunc();
}

DPSeries::DPSeries(Element e, std::vector<Element> coeffs, std::optional<mpq_class> tail_floor, long complete_degree)
    : e_(std::move(e)), c_(std::move(coeffs)), tail_floor_(std::move(tail_floor)), complete_(complete_degree) {
  if (c_.empty()) throw UsageError("divided-power series needs at least the constant coefficient");
  const auto ve = e_.valuation();
  if (e_.is_zero()) throw DomainError("the parameter e must be a nonzero element of O_K");
  if (ve.value < 0) throw DomainError("the parameter e must be integral, got valuation " + ve.value.get_str());
  for (const auto& c : c_)
    if (!c.field().same(e_.field())) throw UsageError("series coefficient over a different field");
  complete_ = std::min(complete_, trunc());
}

DPSeries DPSeries::zero(const Element& e, long trunc) {
  if (trunc < 0) throw UsageError("truncation order must be >= 0");
  return DPSeries(e, std::vector<Element>(static_cast<std::size_t>(trunc + 1), e.field().zero()));
}

DPSeries DPSeries::one(const Element& e, long trunc) {
  auto c = zero(e, trunc).coeffs();
  c[0] = e.field().one();
  return DPSeries(e, c);
}

DPSeries DPSeries::variable(const Element& e, long trunc) {
  auto c = zero(e, trunc).coeffs();
  if (trunc >= 1) c[1] = e.field().one();
  return DPSeries(e, c);
}

DPSeries DPSeries::t(const Element& e, long trunc) {
  auto c = zero(e, trunc).coeffs();
  c[0] = e.field().one();
  if (trunc >= 1) c[1] = e;
  return DPSeries(e, c);
}

bool DPSeries::integral() const {
  for (const auto& c : c_)
    if (c.valuation().value < 0) return false;
  return true;
}

mpq_class DPSeries::floor() const {
  mpq_class best = padic::kExactPrecision;
  for (const auto& c : c_) best = std::min(best, c.valuation().value);
  if (tail_floor_) best = std::min(best, *tail_floor_);
  return best;
}

DPSeries DPSeries::truncated(long trunc) const {
  if (trunc > this->trunc()) throw UsageError("cannot raise the truncation order of a series");
  std::vector<Element> c(c_.begin(), c_.begin() + trunc + 1);
  if (polynomial() && polynomial_degree(*this) <= trunc) return DPSeries(e_, c);
  return DPSeries(e_, c, floor(), std::min(complete_, trunc));
}

DPSeries operator+(const DPSeries& f, const DPSeries& g) {
  require_compatible(f, g);
  const long n = std::min(f.trunc(), g.trunc());
  std::vector<Element> c;
  for (long k = 0; k <= n; ++k) c.push_back(f.coeff(k) + g.coeff(k));
  if (f.polynomial() && g.polynomial() && std::max(polynomial_degree(f), polynomial_degree(g)) <= n) {
    return DPSeries(f.e(), c);
  }
  return DPSeries(f.e(), c, std::min(f.floor(), g.floor()), std::min(f.complete_degree(), g.complete_degree()));
}

DPSeries operator-(const DPSeries& f, const DPSeries& g) {
  std::vector<Element> neg;
  for (const auto& c : g.coeffs()) neg.push_back(-c);
  const DPSeries mg = g.polynomial() ? DPSeries(g.e(), neg) : DPSeries(g.e(), neg, g.tail_floor(), g.complete_degree());
  return f + mg;
}

DPSeries operator*(const DPSeries& f, const DPSeries& g) {
  require_compatible(f, g);
  const long p = f.field().prime();
  const long n = std::min(f.trunc(), g.trunc());
  std::vector<Element> c;
  for (long m = 0; m <= n; ++m) {
    Element acc = f.field().zero();
    for (long i = 0; i <= m; ++i) {
      if (exact_zero(f.coeff(i)) || exact_zero(g.coeff(m - i))) continue;
      acc += f.coeff(i) * g.coeff(m - i) * binomial(p, m, i);
    }
    c.push_back(std::move(acc));
  }
  if (f.polynomial() && g.polynomial() && polynomial_degree(f) + polynomial_degree(g) <= n) return DPSeries(f.e(), c);
  return DPSeries(f.e(), c, f.floor() + g.floor(), std::min(f.complete_degree(), g.complete_degree()));
}

DPSeries sen_theta(const DPSeries& f) {
  const long n = f.trunc();
  const long p = f.field().prime();
  std::vector<Element> c;
  for (long k = 0; k <= n; ++k) {
    Element out = f.e() * f.coeff(k) * Scalar::exact(p, k);
    if (k < n) out += f.coeff(k + 1);
    c.push_back(std::move(out));
  }
  if (f.polynomial()) return DPSeries(f.e(), c);
  // out_N misses c_(N+1); the missing part keeps the floor since e is integral
  return DPSeries(f.e(), c, f.floor(), f.complete_degree() - 1);
}

DPSeries solve_theta(const DPSeries& g) {
  const long n = g.trunc();
  const long p = g.field().prime();
  std::vector<Element> c{g.field().zero()};
  for (long k = 0; k < n; ++k) {
    // c_(k+1) = b_k - e k c_k
    c.push_back(g.coeff(k) - g.e() * c.back() * Scalar::exact(p, k));
  }
  const Element next = g.coeff(n) - g.e() * c.back() * Scalar::exact(p, n);
  if (g.polynomial() && exact_zero(next)) return DPSeries(g.e(), c);
  mpq_class floor = g.floor();
  for (const auto& x : c) floor = std::min(floor, x.valuation().value);
  floor = std::min(floor, next.valuation().value);
  const long complete = g.polynomial() ? n : std::min(n, g.complete_degree() + 1);
  return DPSeries(g.e(), c, floor, complete);
}

DPSeries coaction(const DPSeries& f, const Element& b) {
  if (!b.field().same(f.field())) throw UsageError("coaction parameter b lives in a different field");
  const long n = f.trunc();
  const long p = f.field().prime();
  const Field& k = f.field();
  const Element eb1 = k.one() + f.e() * b;

  // coefficients past `last` are unknown (series tail or partial sums)
  const long last = f.polynomial() ? n : f.complete_degree();
  mpq_class unknown_floor;
  mpq_class vb = b.valuation().value;
  if (!f.polynomial()) {
    mpq_class alpha(1, p - 1);
    alpha.canonicalize();
    if (!exact_zero(b) && vb <= alpha) {
      throw ConvergenceError("coaction on a truncated series needs v(b) > 1/(p-1) = " + alpha.get_str() +
                             " (convergence radius) so that b^k/k! -> 0; got v(b) = " + vb.get_str());
    }
    unknown_floor = *f.tail_floor();
    for (long m = last + 1; m <= n; ++m) unknown_floor = std::min(unknown_floor, f.coeff(m).valuation().value);
  }

  std::vector<Element> pow_t{k.one()}, divided{k.one()};
  for (long m = 1; m <= n; ++m) {
    pow_t.push_back(pow_t.back() * eb1);
    divided.push_back(divided.back() * b / Scalar::exact(p, m));
  }
  const mpq_class v_eb1 = eb1.valuation().value;

  std::vector<Element> c;
  for (long m = 0; m <= n; ++m) {
    Element acc = k.zero();
    const long top = m <= last ? last : n;
    for (long j = m; j <= top; ++j) {
      if (exact_zero(f.coeff(j))) continue;
      acc += f.coeff(j) * divided[static_cast<std::size_t>(j - m)];
    }
    acc *= pow_t[static_cast<std::size_t>(m)];
    if (!f.polynomial() && !exact_zero(b)) {
      const long k0 = m <= last ? last - m + 1 : 0;
      const mpq_class bound = unknown_floor + mpq_class(m) * v_eb1 + tail_decay(p, vb, k0);
      acc = acc.with_precision(bound);
    }
    c.push_back(std::move(acc));
  }
  if (f.polynomial() || exact_zero(b)) {
    return f.polynomial() ? DPSeries(f.e(), c) : DPSeries(f.e(), c, f.tail_floor(), f.complete_degree());
  }
  return DPSeries(f.e(), c, f.floor(), f.complete_degree() - 1);
}

DPSeries log_t(const Element& e, long trunc) {
  const long p = e.field().prime();
  std::vector<Element> c{e.field().zero()};
  Element term = e.field().one();
  for (long n = 1; n <= trunc; ++n) {
    if (n > 1) term = term * (-e) * Scalar::exact(p, n - 1);
    c.push_back(term);
  }
  // (-e)^(n-1) (n-1)! stays integral
  return DPSeries(e, c, mpq_class(0), trunc);
}

DPSeries log_t(const Field& k, long trunc) { return log_t(k.different(), trunc); }

DPSeries gsharp_transport(const DPSeries& f, Direction direction) {
  const long n = f.trunc();
  const long p = f.field().prime();
  const Field& k = f.field();
  // divided-power coefficients h_1..h_N of the substituted series
  std::vector<Element> h{k.zero()};
  Element term = k.one();
  for (long j = 1; j <= n; ++j) {
    if (j > 1) term = direction == Direction::ToGsharp ? term * (-f.e()) * Scalar::exact(p, j - 1) : term * f.e();
    h.push_back(term);
  }
  // partial Bell polynomials B[m][r] = sum_j C(m-1, j-1) h_j B[m-j][r-1]
  std::vector<std::vector<Element>> bell(static_cast<std::size_t>(n + 1),
                                         std::vector<Element>(static_cast<std::size_t>(n + 1), k.zero()));
  bell[0][0] = k.one();
  for (long m = 1; m <= n; ++m) {
    for (long r = 1; r <= m; ++r) {
      Element acc = k.zero();
      for (long j = 1; j <= m - r + 1; ++j) {
        const Element& prev = bell[static_cast<std::size_t>(m - j)][static_cast<std::size_t>(r - 1)];
        if (exact_zero(prev)) continue;
        acc += h[static_cast<std::size_t>(j)] * prev * binomial(p, m - 1, j - 1);
      }
      bell[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)] = std::move(acc);
    }
  }
  std::vector<Element> c;
  for (long m = 0; m <= n; ++m) {
    Element acc = k.zero();
    for (long r = 0; r <= m; ++r) {
      if (exact_zero(f.coeff(r))) continue;
      acc += f.coeff(r) * bell[static_cast<std::size_t>(m)][static_cast<std::size_t>(r)];
    }
    c.push_back(std::move(acc));
  }
  // g_m only involves f_0..f_m, so no degree is lost
  if (f.polynomial() && polynomial_degree(f) <= 0) return DPSeries(f.e(), c);
  return DPSeries(f.e(), c, f.floor(), f.complete_degree());
}

linalg::Matrix<Element> theta_matrix(const Element& e, long trunc) {
  const Field& k = e.field();
  const long p = k.prime();
  const auto n = static_cast<std::size_t>(trunc + 1);
  linalg::Matrix<Element> m(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = e * Scalar::exact(p, static_cast<long>(i));
    if (i + 1 < n) m(i, i + 1) = k.one();
  }
  return m;
}

}  // namespace senlab::dpseries
