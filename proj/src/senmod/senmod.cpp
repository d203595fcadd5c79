#include "senlab/senmod/senmod.hpp"

#include <algorithm>

#include "senlab/error.hpp"
#include "senlab/linalg/charpoly.hpp"
#include "senlab/linalg/elimination.hpp"
#include "senlab/padic/series.hpp"

namespace senlab::senmod {

using padic::Scalar;

namespace {

bool exact_zero(const Element& x) { return x.is_zero() && x.is_exact(); }

bool exact_zero(const Matrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const Element& x) { return exact_zero(x); });
}

Matrix identity(const Field& k, std::size_t n) { return Matrix::identity(n, k.zero(), k.one()); }

Matrix shifted(const Matrix& theta, const Element& shift) {
  Matrix a = theta;
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) -= shift;
  return a;
}

void require_same(const SenModule& a, const SenModule& b) {
  if (!a.field().same(b.field())) throw UsageError("Sen modules over different fields");
  if (!(a.e() - b.e()).is_zero()) throw UsageError("Sen modules with different parameters e");
}

// Rank decisions must not rest on entries known to fewer than half the
// working digits.
mpq_class rank_floor(const SenModule& m) { return mpq_class(m.precision(), 2); }

}  // namespace

SenModule::SenModule(Matrix theta) : SenModule(theta, theta(0, 0).field().different()) {}

SenModule::SenModule(Matrix theta, Element e) : theta_(std::move(theta)), e_(std::move(e)) {
  if (!theta_.square()) {
    throw UsageError("theta must be square, got " + std::to_string(theta_.rows()) + " x " + std::to_string(theta_.cols()));
  }
  if (theta_.rows() == 0) throw UsageError("Sen module of dimension 0");
  for (const auto& x : theta_.data())
    if (!x.field().same(e_.field())) throw UsageError("theta entry over a different field");
  if (e_.is_zero()) throw DomainError("the parameter e must be nonzero");
  if (e_.valuation().value < 0) throw DomainError("the parameter e must be integral");
}

SenModule bk_module(const Field& k, long n) {
  Matrix t(1, 1, k.different() * Scalar::exact(k.prime(), n));
  return SenModule(t);
}

PolyK char_poly(const Matrix& a) { return linalg::char_poly(a); }
PolyK char_poly(const SenModule& m) { return char_poly(m.theta()); }

PolygonK newton_polygon(const PolyK& f) {
  PolygonK out;
  const long d = static_cast<long>(f.size()) - 1;
  while (out.zero_roots < d && exact_zero(f[static_cast<std::size_t>(out.zero_roots)])) ++out.zero_roots;
  std::vector<padic::PolygonPoint> pts;
  for (long i = out.zero_roots; i <= d; ++i) {
    const Element& c = f[static_cast<std::size_t>(i)];
    if (exact_zero(c)) continue;
    const auto v = c.valuation();
    pts.push_back({i, v.value, !v.exact});
  }
  out.polygon = padic::newton_polygon(pts, false);
  return out;
}

ClassifierReport nearly_ht_test(const SenModule& m) {
  const long p = m.field().prime();
  const Matrix& theta = m.theta();
  const Element ep = field::pow(m.e(), static_cast<unsigned long>(p - 1));
  const Matrix q = linalg::power(theta, static_cast<unsigned long>(p)) - theta * ep;
  ClassifierReport r;
  r.q_char_poly = char_poly(q);
  r.polygon = newton_polygon(r.q_char_poly);
  const std::size_t d = m.dim();
  r.verdict = true;
  for (std::size_t i = 0; i < d; ++i) {
    const Element& c = r.q_char_poly[i];
    if (exact_zero(c)) continue;
    const auto v = c.valuation();
    if (v.value > 0) continue;
    if (!v.exact) {
      throw PrecisionError("nearly Hodge-Tate test: coefficient " + std::to_string(i) +
                           " of char(Q) is zero only to valuation " + v.value.get_str() +
                           ", so topological nilpotence of Q cannot be decided; raise the working precision");
    }
    r.verdict = false;
  }
  for (const auto& s : r.polygon.polygon.slopes) {
    if (s.root_valuation <= 0) r.offending.insert(r.offending.end(), static_cast<std::size_t>(s.multiplicity), s.root_valuation);
  }
  return r;
}

std::vector<std::pair<long, long>> ht_weights(const SenModule& m, long n_min, long n_max) {
  if (n_min > n_max) throw UsageError("empty weight range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
  const long p = m.field().prime();
  const std::size_t d = m.dim();
  std::vector<std::pair<long, long>> out;
  for (long n = n_min; n <= n_max; ++n) {
    const Matrix a = linalg::power(shifted(m.theta(), m.e() * Scalar::exact(p, n)), d);
    const auto ech = linalg::eliminate(a);
    linalg::certify_rank(ech, rank_floor(m));
    const long mult = static_cast<long>(d - ech.rank);
    if (mult > 0) out.emplace_back(n, mult);
  }
  return out;
}

std::vector<std::pair<long, long>> ht_weights(const SenModule& m) {
  return ht_weights(m, -kDefaultWeightBound, kDefaultWeightBound);
}

Cohomology cohomology(const SenModule& m) {
  const auto ech = linalg::eliminate(m.theta());
  linalg::certify_rank(ech, rank_floor(m));
  Cohomology c;
  c.rank = static_cast<long>(ech.rank);
  c.h0 = linalg::kernel_basis(ech);
  c.h1 = linalg::cokernel_basis(ech);
  return c;
}

SenModule tensor(const SenModule& a, const SenModule& b) {
  require_same(a, b);
  const Field& k = a.field();
  const Matrix t = linalg::kronecker(a.theta(), identity(k, b.dim())) + linalg::kronecker(identity(k, a.dim()), b.theta());
  return SenModule(t, a.e());
}

SenModule dual(const SenModule& m) {
  Matrix t = m.theta().transpose();
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) t(i, j) = -t(i, j);
  return SenModule(t, m.e());
}

SenModule bk_twist(const SenModule& m, long n) {
  return SenModule(shifted(m.theta(), -(m.e() * Scalar::exact(m.field().prime(), n))), m.e());
}

Matrix operator_series(const SenModule& m, const Element& b) {
  const Field& k = m.field();
  if (!b.field().same(k)) throw UsageError("operator series parameter b lives in a different field");
  const long p = k.prime();
  const std::size_t d = m.dim();
  Matrix sum = identity(k, d);
  if (exact_zero(b)) return sum;
  if (!nearly_ht_test(m).verdict) {
    throw DomainError("operator series needs a nearly Hodge-Tate Theta (Theta^p - e^(p-1) Theta topologically nilpotent)");
  }
  const mpq_class vb = b.valuation().value;
  mpq_class alpha(1, p - 1);
  alpha.canonicalize();
  const mpq_class c = std::min(mpq_class(0), linalg::min_entry_bound(m.theta()));
  const bool bounded_tail = vb - alpha + c > 0;

  padic::ConvergenceMonitor monitor(p, mpq_class(m.precision()));
  Matrix prod = identity(k, d);
  Element coeff = k.one();  // b^n/n!
  for (long n = 0;; ++n) {
    prod = prod * shifted(m.theta(), m.e() * Scalar::exact(p, n));
    if (exact_zero(prod)) break;
    coeff = coeff * b / Scalar::exact(p, n + 1);
    const Matrix term = prod * coeff;
    sum += term;
    const mpq_class v = linalg::min_entry_bound(term);
    if (bounded_tail) {
      // v(P_m) >= v(P_(n+1)) + (m - n - 1) c and v(m!) <= (m - 1)/(p - 1)
      const long next = n + 2;
      const mpq_class tail =
          linalg::min_entry_bound(prod) + c + mpq_class(next) * vb - mpq_class(next - 1) * alpha;
      if (monitor.should_stop(v, tail)) break;
    } else if (monitor.should_stop(v)) {
      break;
    }
  }
  return sum;
}

Matrix semilinear_descent_matrix(const SenModule& m, const Scalar& chi) {
  const Field& k = m.field();
  const long p = k.prime();
  if (chi.prime() != p) throw UsageError("character value over a different prime");
  const Scalar z = chi - Scalar::one(p);
  if (z.is_zero() && z.is_exact()) return identity(k, m.dim());
  const long need = padic::exp_min_valuation(p);
  if (z.valuation() < need) {
    if (z.is_zero()) {
      throw PrecisionError("character value known too coarsely to certify v(chi - 1) > alpha = " +
                           padic::exp_radius(p).get_str());
    }
    throw DomainError("character value needs v(chi - 1) > alpha = " + padic::exp_radius(p).get_str() +
                      " (convergence radius), got " + std::to_string(z.valuation()));
  }
  return operator_series(m, k.from_scalar(z) / m.e());
}

}  // namespace senlab::senmod
