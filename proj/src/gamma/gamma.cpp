#include "senlab/gamma/gamma.hpp"

#include <algorithm>
#include <numeric>

#include "senlab/error.hpp"
#include "senlab/linalg/elimination.hpp"

namespace senlab::gamma {

namespace {

QMatrix capped(QMatrix a, long prec) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).with_precision(prec);
  return a;
}

Scalar chi_power(const CyclotomicLevel& level, long n) {
  if (n >= 0) return pow(level.chi, static_cast<unsigned long>(n)).with_precision(level.precision);
  const mpz_class den = mpz_class(level.a) * 1;
  mpz_class d;
  mpz_pow_ui(d.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-n));
  return Scalar::from_rational(level.p, mpq_class(1, d), level.precision);
}

long vector_valuation(const std::vector<Scalar>& v) {
  long best = padic::kExactPrecision;
  for (const auto& x : v) best = std::min(best, x.valuation());
  return best;
}

bool all_zero(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

}  // namespace

Field cyclotomic_field(long p, long m, long prec) {
  if (m < 1) throw UsageError("cyclotomic level m must be >= 1");
  long q = 1;
  for (long k = 1; k < m; ++k) q *= p;
  // Phi_(p^m)(z) = sum_(k<p) z^(k q), expanded at z = 1 + u
  std::vector<mpz_class> coeffs(static_cast<std::size_t>((p - 1) * q + 1), 0);
  for (long k = 0; k < p; ++k) {
    for (long r = 0; r <= k * q; ++r) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k * q), static_cast<unsigned long>(r));
      coeffs[static_cast<std::size_t>(r)] += b;
    }
  }
  field::LocalFieldSpec s;
  s.p = p;
  s.prec = prec;
  s.unramified = {Scalar::exact(p, -1), Scalar::one(p)};
  for (const auto& c : coeffs) s.eisenstein.push_back({Scalar::exact(p, c)});
  return Field::build(s);
}

CyclotomicLevel build_level(long p, long m, long a, long prec) {
  if (std::gcd(a, p) != 1) {
    throw DomainError("generator a = " + std::to_string(a) + " is not prime to p = " + std::to_string(p));
  }
  if (a == 1) throw DomainError("generator a = 1 gives the trivial automorphism with chi = 1");
  const Field k = cyclotomic_field(p, m, prec);
  long pm = 1;
  for (long i = 0; i < m; ++i) pm *= p;
  const long r = ((a % pm) + pm) % pm;
  const auto z = k.one() + k.pi();
  // Homomorphism verifies Phi(z^a) = 0
  const field::Homomorphism sigma(k, k.y(), field::pow(z, r) - k.one());
  return CyclotomicLevel{p, m, a, prec, k, sigma.matrix(), Scalar::exact(p, a)};
}

std::optional<long> norm_exponent(const QMatrix& a) {
  const auto r = linalg::min_entry_valuation(a);
  if (!r.nonzero) return std::nullopt;
  return -r.value.get_num().get_si();
}

QMatrix diagonal_block(const CyclotomicLevel& level, long n) {
  QMatrix b = capped(level.sigma, level.precision) * chi_power(level, n);
  for (std::size_t i = 0; i < b.rows(); ++i) b(i, i) -= Scalar::one(level.p);
  return b;
}

RhoReport rho_bound(const CyclotomicLevel& level, long n_min, long n_max) {
  if (n_min > n_max) throw UsageError("empty range for n");
  if (n_min <= 0 && 0 <= n_max) throw UsageError("the range for n must exclude 0 (chi^0 sigma - 1 is not invertible)");
  std::vector<long> ns;
  for (long n = n_min; n <= n_max; ++n) ns.push_back(n);
  return rho_bound(level, ns);
}

RhoReport rho_bound(const CyclotomicLevel& level, const std::vector<long>& ns) {
  if (ns.empty()) throw UsageError("no values of n given");
  RhoReport r;
  bool first = true;
  for (long n : ns) {
    if (n == 0) throw UsageError("n = 0 is excluded (chi^0 sigma - 1 is not invertible)");
    const QMatrix inv = linalg::inverse(diagonal_block(level, n));
    const auto ne = norm_exponent(inv);
    if (!ne) throw PrecisionError("inverse of chi^" + std::to_string(n) + " sigma - 1 vanishes to precision");
    r.per_n.emplace_back(n, *ne);
    r.delta = first ? *ne : std::max(r.delta, *ne);
    first = false;
  }
  return r;
}

TwistedOperator g_minus_one(const CyclotomicLevel& level, const Scalar& e, long trunc) {
  const long p = level.p;
  if (trunc < 1) throw UsageError("truncation N must be >= 1");
  if (e.prime() != p) throw UsageError("e over a different prime");
  if (e.is_zero()) throw DomainError("e must be a nonzero element of Z_p");
  if (e.valuation() < 0) throw DomainError("e must lie in Z_p");
  const Scalar y = Scalar::from_integer(p, level.a - 1, level.precision + e.valuation()) / e;
  if (y.valuation() < 1) {
    throw DomainError("g - 1 needs v(y) >= 1 for y = (chi - 1)/e, got v(y) = " + std::to_string(y.valuation()));
  }
  const std::size_t deg = level.sigma.rows();
  const std::size_t dim = deg * static_cast<std::size_t>(trunc);
  const QMatrix sig = capped(level.sigma, level.precision);
  QMatrix g(dim, dim, Scalar::zero(p));
  QMatrix rho(dim, dim, Scalar::zero(p));
  std::vector<Scalar> divided{Scalar::one(p)};  // y^k/k!
  for (long k = 1; k < trunc; ++k) divided.push_back(divided.back() * y / Scalar::exact(p, k));
  for (long m = 1; m <= trunc; ++m) {
    const Scalar cm = chi_power(level, m);
    for (long k = 0; m + k <= trunc; ++k) {
      QMatrix blk = sig * (cm * divided[static_cast<std::size_t>(k)]);
      if (k == 0) {
        for (std::size_t i = 0; i < deg; ++i) blk(i, i) -= Scalar::one(p);
        const QMatrix inv = linalg::inverse(blk);
        for (std::size_t i = 0; i < deg; ++i)
          for (std::size_t j = 0; j < deg; ++j)
            rho(static_cast<std::size_t>(m - 1) * deg + i, static_cast<std::size_t>(m - 1) * deg + j) = inv(i, j);
      }
      const std::size_t r0 = static_cast<std::size_t>(m - 1) * deg, c0 = static_cast<std::size_t>(m + k - 1) * deg;
      for (std::size_t i = 0; i < deg; ++i)
        for (std::size_t j = 0; j < deg; ++j) g(r0 + i, c0 + j) = blk(i, j);
    }
  }
  QMatrix strict = g;
  for (long m = 0; m < trunc; ++m)
    for (std::size_t i = 0; i < deg; ++i)
      for (std::size_t j = 0; j < deg; ++j)
        strict(static_cast<std::size_t>(m) * deg + i, static_cast<std::size_t>(m) * deg + j) = Scalar::zero(p);
  QMatrix rho_m = rho * strict;
  return TwistedOperator{level, e, trunc, y, std::move(g), std::move(rho), std::move(rho_m), deg};
}

std::vector<Scalar> apply_g_minus_one(const TwistedOperator& t, const std::vector<Scalar>& x) {
  if (x.size() != t.matrix.cols()) throw UsageError("vector has the wrong length for g - 1");
  return t.matrix * x;
}

NeumannResult neumann_invert(const TwistedOperator& t, const std::vector<Scalar>& rhs, bool allow_nilpotent) {
  if (rhs.size() != t.matrix.rows()) {
    throw UsageError("right-hand side has length " + std::to_string(rhs.size()) + ", expected " +
                     std::to_string(t.matrix.rows()));
  }
  NeumannResult r;
  r.norm_exponent = norm_exponent(t.rho_m);
  const bool contracting = !r.norm_exponent || *r.norm_exponent < 0;
  if (!contracting && !allow_nilpotent) {
    throw ConvergenceError("Neumann series needs |rho M| < 1, but |rho M| = p^" + std::to_string(*r.norm_exponent) +
                           "; use a smaller y (larger m or a generator closer to 1)");
  }
  const long target = t.level.precision;
  std::vector<Scalar> term = t.rho * rhs;
  std::vector<Scalar> x = term;
  r.terms = 1;
  for (long k = 1;; ++k) {
    if (all_zero(term)) break;
    // contracting: later terms only grow in valuation
    if (contracting && vector_valuation(term) >= target) break;
    if (!contracting && k > t.trunc) break;  // (rho M)^N = 0
    term = t.rho_m * term;
    for (auto& s : term) s = -s;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += term[i];
    ++r.terms;
  }
  std::vector<Scalar> res = gamma::apply_g_minus_one(t, x);
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= rhs[i];
  r.residual_valuation = vector_valuation(res);
  r.solution = std::move(x);
  return r;
}

std::vector<Scalar> dense_solve(const TwistedOperator& t, const std::vector<Scalar>& rhs) {
  return linalg::solve(t.matrix, rhs);
}

long kernel_check(const TwistedOperator& t) {
  const auto ech = linalg::eliminate(t.matrix);
  linalg::certify_rank(ech, mpq_class(t.level.precision, 2));
  return static_cast<long>(t.matrix.cols() - ech.rank);
}

}  // namespace senlab::gamma
