#include "senlab/field/field.hpp"

#include <sstream>

#include "senlab/error.hpp"
#include "senlab/field/finite_field.hpp"
#include "senlab/linalg/elimination.hpp"

namespace senlab::field {

struct FieldData {
  LocalFieldSpec spec;
  long p = 0;
  long f = 1;
  long e = 1;
  std::vector<Scalar> g;                 // g_0 .. g_{f-1}
  std::vector<std::vector<Scalar>> E;    // E_0 .. E_{e-1}, each of size f
  std::vector<Scalar> basis_traces;      // Tr(y^j u^i), flat index
  std::vector<Scalar> different;         // coefficients of E'(pi)
  FpPoly g_bar;
};

namespace {

using U = std::vector<Scalar>;

U reduce_u(const FieldData& d, U a) {
  for (std::size_t top = a.size(); top-- > static_cast<std::size_t>(d.f);) {
    const Scalar c = a[top];
    if (c.is_zero() && c.is_exact()) continue;
    const std::size_t base = top - static_cast<std::size_t>(d.f);
    for (long j = 0; j < d.f; ++j) a[base + static_cast<std::size_t>(j)] -= c * d.g[static_cast<std::size_t>(j)];
  }
  a.resize(static_cast<std::size_t>(d.f), Scalar::zero(d.p));
  return a;
}

U conv(const FieldData& d, const U& a, const U& b) {
  U c(a.size() + b.size() - 1, Scalar::zero(d.p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero() && a[i].is_exact()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

U mul_u(const FieldData& d, const U& a, const U& b) { return reduce_u(d, conv(d, a, b)); }

std::vector<Scalar> multiply(const FieldData& d, const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
  const auto f = static_cast<std::size_t>(d.f), e = static_cast<std::size_t>(d.e);
  auto row = [&](const std::vector<Scalar>& c, std::size_t i) {
    U r;
    r.reserve(f);
    for (std::size_t j = 0; j < f; ++j) r.push_back(c[j * e + i]);
    return r;
  };
  std::vector<U> xr, yr;
  for (std::size_t i = 0; i < e; ++i) {
    xr.push_back(row(x, i));
    yr.push_back(row(y, i));
  }
  std::vector<U> prod(2 * e - 1, U(2 * f - 1, Scalar::zero(d.p)));
  for (std::size_t a = 0; a < e; ++a) {
    for (std::size_t b = 0; b < e; ++b) {
      const U c = conv(d, xr[a], yr[b]);
      for (std::size_t k = 0; k < c.size(); ++k) prod[a + b][k] += c[k];
    }
  }
  for (auto& r : prod) r = reduce_u(d, std::move(r));
  // u^e = -sum E_i u^i
  for (std::size_t k = 2 * e - 1; k-- > e;) {
    const U t = prod[k];
    for (std::size_t i = 0; i < e; ++i) {
      const U s = mul_u(d, t, d.E[i]);
      for (std::size_t j = 0; j < f; ++j) prod[k - e + i][j] -= s[j];
    }
  }
  std::vector<Scalar> out(f * e, Scalar::zero(d.p));
  for (std::size_t i = 0; i < e; ++i)
    for (std::size_t j = 0; j < f; ++j) out[j * e + i] = prod[i][j];
  return out;
}

bool is_prime(long p) {
  if (p < 2) return false;
  const mpz_class n = p;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_exact_one(const Scalar& c) { return !c.is_zero() && c.valuation() == 0 && c.unit() == 1; }

long reduce_mod_p(const Scalar& c, long p, const std::string& what) {
  if (c.is_zero()) {
    if (c.precision() < 1) throw PrecisionError(what + ": coefficient known to no p-adic digits");
    return 0;
  }
  if (c.valuation() < 0) throw DomainError(what + ": coefficient is not integral (valuation " + std::to_string(c.valuation()) + ")");
  if (c.valuation() > 0) return 0;
  mpz_class r = c.unit() % p;
  if (r < 0) r += p;
  return r.get_si();
}

}  // namespace

Field Field::build(const LocalFieldSpec& spec) {
  if (!is_prime(spec.p)) throw UsageError("p = " + std::to_string(spec.p) + " is not a prime");
  if (spec.prec < 1) throw UsageError("working precision must be positive");
  auto d = std::make_shared<FieldData>();
  d->spec = spec;
  d->p = spec.p;
  const long p = spec.p;
  for (const auto& c : spec.unramified)
    if (c.prime() != p) throw UsageError("unramified polynomial has a coefficient over a different prime");
  if (spec.unramified.size() < 2) throw UsageError("unramified polynomial g must have degree >= 1");
  if (!is_exact_one(spec.unramified.back())) throw DomainError("unramified polynomial g must be monic");
  d->f = static_cast<long>(spec.unramified.size()) - 1;
  d->g.assign(spec.unramified.begin(), spec.unramified.end() - 1);
  FpPoly gbar;
  for (const auto& c : spec.unramified) gbar.push_back(reduce_mod_p(c, p, "unramified polynomial"));
  d->g_bar = fp_trim(gbar);
  if (!fp_irreducible(d->g_bar, p)) throw DomainError("unramified polynomial is reducible modulo p");

  if (spec.eisenstein.size() < 2) throw UsageError("Eisenstein polynomial E must have degree >= 1");
  d->e = static_cast<long>(spec.eisenstein.size()) - 1;
  auto lift_u = [&](const std::vector<Scalar>& c, const char* what) {
    if (static_cast<long>(c.size()) > d->f) {
      throw UsageError(std::string(what) + " has " + std::to_string(c.size()) +
                       " coordinates, more than the residue degree " + std::to_string(d->f));
    }
    U out(c.begin(), c.end());
    for (const auto& s : out)
      if (s.prime() != p) throw UsageError(std::string(what) + " has a coefficient over a different prime");
    out.resize(static_cast<std::size_t>(d->f), Scalar::zero(p));
    return out;
  };
  const U lead = lift_u(spec.eisenstein.back(), "leading Eisenstein coefficient");
  bool monic = is_exact_one(lead[0]);
  for (std::size_t j = 1; j < lead.size(); ++j) monic = monic && lead[j].is_zero();
  if (!monic) throw DomainError("Eisenstein polynomial E must be monic");
  for (long i = 0; i < d->e; ++i) {
    U c = lift_u(spec.eisenstein[static_cast<std::size_t>(i)], "Eisenstein coefficient");
    for (const auto& s : c) {
      if (s.is_zero()) {
        if (s.precision() < (i == 0 ? 2 : 1)) {
          throw PrecisionError("Eisenstein check: coefficient of u^" + std::to_string(i) +
                               " is zero only to precision " + std::to_string(s.precision()));
        }
      } else if (s.valuation() < 1) {
        throw DomainError("polynomial is not Eisenstein: coefficient of u^" + std::to_string(i) + " has valuation " +
                          std::to_string(s.valuation()) + " < 1");
      }
    }
    if (i == 0) {
      bool unit_one = false;
      for (const auto& s : c) unit_one = unit_one || (!s.is_zero() && s.valuation() == 1);
      if (!unit_one) throw DomainError("polynomial is not Eisenstein: constant coefficient has valuation > 1");
    }
    d->E.push_back(std::move(c));
  }

  Field field(d);
  // traces of the basis, through the multiplication matrices
  const long n = d->f * d->e;
  for (long k = 0; k < n; ++k) {
    std::vector<Scalar> b(static_cast<std::size_t>(n), Scalar::zero(p));
    b[static_cast<std::size_t>(k)] = Scalar::one(p);
    d->basis_traces.push_back(matrix_trace(field.from_coeffs(b).multiplication_matrix()));
  }
  // E'(pi) by Horner on the derivative
  Element der = field.zero();
  for (long i = d->e; i >= 1; --i) {
    const U ci = i == d->e ? lead : d->E[static_cast<std::size_t>(i)];
    der = der * field.pi() + field.from_unramified(ci) * Scalar::exact(p, i);
  }
  d->different = der.coeffs();
  return field;
}

Field Field::qp(long p, long prec) {
  LocalFieldSpec s;
  s.p = p;
  s.unramified = {Scalar::exact(p, -1), Scalar::one(p)};
  s.eisenstein = {{Scalar::exact(p, -p)}, {Scalar::one(p)}};
  s.prec = prec;
  return build(s);
}

long Field::prime() const { return d_->p; }
long Field::residue_degree() const { return d_->f; }
long Field::ramification() const { return d_->e; }
long Field::precision() const { return d_->spec.prec; }
const LocalFieldSpec& Field::spec() const { return d_->spec; }

Element Field::zero() const { return Element(*this, std::vector<Scalar>(static_cast<std::size_t>(degree()), Scalar::zero(d_->p))); }

Element Field::one() const { return from_integer(1); }

Element Field::pi() const {
  if (d_->e == 1) {
    // u = -E_0, an element of U
    U c = d_->E[0];
    for (auto& s : c) s = -s;
    return from_unramified(c);
  }
  Element x = zero();
  x.c_[1] = Scalar::one(d_->p);
  return x;
}

Element Field::y() const {
  if (d_->f == 1) return from_scalar(-d_->g[0]);
  Element x = zero();
  x.c_[static_cast<std::size_t>(d_->e)] = Scalar::one(d_->p);
  return x;
}

Element Field::different() const { return Element(*this, d_->different); }

Element Field::from_scalar(const Scalar& c) const {
  if (c.prime() != d_->p) throw UsageError("scalar over a different prime");
  Element x = zero();
  x.c_[0] = c;
  return x;
}

Element Field::from_integer(long n) const { return from_scalar(Scalar::exact(d_->p, n)); }

Element Field::from_coeffs(std::vector<Scalar> coeffs) const {
  if (static_cast<long>(coeffs.size()) != degree()) {
    throw UsageError("element needs " + std::to_string(degree()) + " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (const auto& c : coeffs)
    if (c.prime() != d_->p) throw UsageError("element coefficient over a different prime");
  return Element(*this, std::move(coeffs));
}

Element Field::from_unramified(const std::vector<Scalar>& dcoeffs) const {
  const U r = reduce_u(*d_, dcoeffs.empty() ? U{Scalar::zero(d_->p)} : U(dcoeffs));
  Element x = zero();
  for (long j = 0; j < d_->f; ++j) x.c_[static_cast<std::size_t>(j * d_->e)] = r[static_cast<std::size_t>(j)];
  return x;
}

bool Field::same(const Field& other) const {
  if (d_ == other.d_) return true;
  const auto& a = d_->spec;
  const auto& b = other.d_->spec;
  if (a.p != b.p || a.unramified.size() != b.unramified.size() || d_->e != other.d_->e) return false;
  for (std::size_t k = 0; k < a.unramified.size(); ++k)
    if (!a.unramified[k].identical(b.unramified[k])) return false;
  for (std::size_t i = 0; i < d_->E.size(); ++i)
    for (std::size_t j = 0; j < d_->E[i].size(); ++j)
      if (!d_->E[i][j].identical(other.d_->E[i][j])) return false;
  return true;
}

const Scalar& Element::coeff(long j, long i) const { return c_[static_cast<std::size_t>(j * field_.ramification() + i)]; }

bool Element::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

bool Element::is_exact() const {
  for (const auto& c : c_)
    if (!c.is_exact()) return false;
  return true;
}

mpq_class Element::precision() const {
  const long e = field_.ramification();
  mpq_class best = padic::kExactPrecision;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_exact()) continue;
    mpq_class v = mpq_class(c_[k].precision()) + mpq_class(static_cast<long>(k) % e, e);
    v.canonicalize();
    if (v < best) best = v;
  }
  return best;
}

Valuation Element::valuation() const {
  const long e = field_.ramification();
  bool have_value = false, have_bound = false;
  mpq_class value, bound;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    mpq_class v = mpq_class(c_[k].valuation()) + mpq_class(static_cast<long>(k) % e, e);
    v.canonicalize();
    if (c_[k].is_zero()) {
      if (!have_bound || v < bound) bound = v;
      have_bound = true;
    } else {
      if (!have_value || v < value) value = v;
      have_value = true;
    }
  }
  if (have_value && (!have_bound || value <= bound)) return {value, true};
  if (!have_value) return {bound, false};
  return {bound, false};
}

Valuation Element::valuation_pi() const {
  Valuation v = valuation();
  v.value *= field_.ramification();
  return v;
}

Element Element::with_precision(long prec) const {
  Element x = *this;
  for (auto& c : x.c_) c = c.with_precision(prec);
  return x;
}

Element Element::with_precision(const mpq_class& bound) const {
  if (bound >= padic::kExactPrecision) return *this;
  const long e = field_.ramification();
  Element x = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    mpq_class b = bound - mpq_class(static_cast<long>(k) % e, e);
    mpz_class ceil;
    mpz_cdiv_q(ceil.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
    x.c_[k] = x.c_[k].with_precision(ceil.get_si());
  }
  return x;
}

bool Element::identical(const Element& rhs) const {
  if (!field_.same(rhs.field_)) return false;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].identical(rhs.c_[k])) return false;
  return true;
}

void Element::require_same(const Element& rhs) const {
  if (!field_.same(rhs.field_)) throw UsageError("elements belong to different fields");
}

Element Element::operator-() const {
  Element x = *this;
  for (auto& c : x.c_) c = -c;
  return x;
}

Element& Element::operator+=(const Element& rhs) {
  require_same(rhs);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

Element& Element::operator-=(const Element& rhs) {
  require_same(rhs);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Element& Element::operator*=(const Element& rhs) {
  require_same(rhs);
  c_ = multiply(*field_.d_, c_, rhs.c_);
  return *this;
}

Element& Element::operator*=(const Scalar& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

namespace {

Scalar divide_scalar(const Scalar& c, const Scalar& s, long prec) {
  if (c.is_exact() && s.is_exact() && !s.is_zero()) {
    if (c.is_zero()) return c;
    mpq_class q = c.lift() / s.lift();
    if (q.get_den() == 1) return Scalar::exact(c.prime(), q.get_num());
    // keep `prec` absolute digits after the division
    return c.with_precision(prec + s.valuation()) / s;
  }
  return c / s;
}

}  // namespace

Element& Element::operator/=(const Scalar& s) {
  for (auto& c : c_) c = divide_scalar(c, s, field_.precision());
  return *this;
}

Element& Element::operator/=(const Element& rhs) {
  require_same(rhs);
  const long prec = field_.precision();
  if (rhs.is_zero()) {
    throw PrecisionError("division by an element that is zero to precision " + rhs.valuation().value.get_str());
  }
  const Element den = rhs.is_exact() ? rhs.with_precision(prec) : rhs;
  const Element num = is_exact() ? with_precision(prec) : *this;
  if (field_.degree() == 1) {
    c_[0] = divide_scalar(c_[0], rhs.c_[0], prec);
    return *this;
  }
  c_ = linalg::solve(den.multiplication_matrix(), num.c_);
  return *this;
}

linalg::Matrix<Scalar> Element::multiplication_matrix() const {
  const std::size_t n = c_.size();
  const long p = field_.prime();
  linalg::Matrix<Scalar> m(n, n, Scalar::zero(p));
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Scalar> b(n, Scalar::zero(p));
    b[k] = Scalar::one(p);
    const auto col = multiply(*field_.d_, c_, b);
    for (std::size_t r = 0; r < n; ++r) m(r, k) = col[r];
  }
  return m;
}

Scalar matrix_trace(const linalg::Matrix<Scalar>& m) {
  Scalar t = m(0, 0);
  for (std::size_t k = 1; k < m.rows(); ++k) t += m(k, k);
  return t;
}

Scalar Element::trace() const {
  const auto& traces = field_.d_->basis_traces;
  Scalar t = Scalar::zero(field_.prime());
  for (std::size_t k = 0; k < c_.size(); ++k) t += c_[k] * traces[k];
  return t;
}

std::vector<long> Element::residue() const {
  const Valuation v = valuation();
  if (v.value < 0) {
    if (v.exact) throw DomainError("residue: element has negative valuation " + v.value.get_str());
    throw PrecisionError("residue: integrality not certified, valuation only known >= " + v.value.get_str());
  }
  const long p = field_.prime(), e = field_.ramification();
  std::vector<long> out;
  for (long j = 0; j < field_.residue_degree(); ++j) out.push_back(reduce_mod_p(c_[static_cast<std::size_t>(j * e)], p, "residue"));
  return out;
}

std::string Element::to_string() const {
  std::ostringstream os;
  const long e = field_.ramification();
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero() && c_[k].is_exact()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[k] << ")";
    const long j = static_cast<long>(k) / e, i = static_cast<long>(k) % e;
    if (j > 0) os << "*y^" << j;
    if (i > 0) os << "*u^" << i;
  }
  if (first) os << "0";
  return os.str();
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator*(Element a, const Element& b) { return a *= b; }
Element operator/(Element a, const Element& b) { return a /= b; }
Element operator*(Element a, const Scalar& s) { return a *= s; }
Element operator*(const Scalar& s, Element a) { return a *= s; }
Element operator/(Element a, const Scalar& s) { return a /= s; }

Element pow(const Element& x, unsigned long n) {
  Element result = x.field().one();
  Element base = x;
  while (n > 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Element pow(const Element& x, long n) {
  if (n >= 0) return pow(x, static_cast<unsigned long>(n));
  return x.field().one() / pow(x, static_cast<unsigned long>(-n));
}

Homomorphism::Homomorphism(const Field& source, const Element& eta, const Element& upsilon)
    : source_(source), target_(eta.field()) {
  if (!upsilon.field().same(target_)) throw UsageError("images of y and u live in different fields");
  if (source.prime() != target_.prime()) throw UsageError("homomorphism between fields over different primes");
  const auto& spec = source.spec();
  for (const auto* img : {&eta, &upsilon}) {
    const Valuation v = img->valuation();
    if (v.exact && v.value < 0) throw DomainError("substitution images must be integral, got valuation " + v.value.get_str());
  }
  // g(eta)
  Element g_eta = target_.zero();
  for (std::size_t k = spec.unramified.size(); k-- > 0;) g_eta = g_eta * eta + target_.from_scalar(spec.unramified[k]);
  if (!g_eta.is_zero()) {
    throw DomainError("substitution fails the unramified relation: g(eta) has valuation " + g_eta.valuation().value.get_str());
  }
  // E with coefficients mapped through y -> eta, evaluated at upsilon
  auto map_u = [&](const std::vector<Scalar>& d) {
    Element acc = target_.zero();
    for (std::size_t j = d.size(); j-- > 0;) acc = acc * eta + target_.from_scalar(d[j]);
    return acc;
  };
  Element e_ups = target_.zero();
  for (std::size_t i = spec.eisenstein.size(); i-- > 0;) e_ups = e_ups * upsilon + map_u(spec.eisenstein[i]);
  if (!e_ups.is_zero()) {
    throw DomainError("substitution fails the Eisenstein relation: E(upsilon) has valuation " +
                      e_ups.valuation().value.get_str());
  }
  const long f = source.residue_degree(), e = source.ramification();
  std::vector<Element> eta_pows{target_.one()}, ups_pows{target_.one()};
  for (long j = 1; j < f; ++j) eta_pows.push_back(eta_pows.back() * eta);
  for (long i = 1; i < e; ++i) ups_pows.push_back(ups_pows.back() * upsilon);
  for (long j = 0; j < f; ++j)
    for (long i = 0; i < e; ++i) basis_images_.push_back(eta_pows[static_cast<std::size_t>(j)] * ups_pows[static_cast<std::size_t>(i)]);
}

Element Homomorphism::operator()(const Element& x) const {
  if (!x.field().same(source_)) throw UsageError("element is not in the source field of the homomorphism");
  Element out = target_.zero();
  for (std::size_t k = 0; k < basis_images_.size(); ++k) {
    const Scalar& c = x.coeffs()[k];
    if (c.is_zero() && c.is_exact()) continue;
    out += basis_images_[k] * c;
  }
  return out;
}

linalg::Matrix<Scalar> Homomorphism::matrix() const {
  const std::size_t rows = static_cast<std::size_t>(target_.degree()), cols = basis_images_.size();
  linalg::Matrix<Scalar> m(rows, cols, Scalar::zero(target_.prime()));
  for (std::size_t k = 0; k < cols; ++k)
    for (std::size_t r = 0; r < rows; ++r) m(r, k) = basis_images_[k].coeffs()[r];
  return m;
}

}  // namespace senlab::field
