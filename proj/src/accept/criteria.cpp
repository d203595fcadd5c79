#include "senlab/accept/criteria.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "senlab/dpseries/dpseries.hpp"
#include "senlab/error.hpp"
#include "senlab/gamma/gamma.hpp"
#include "senlab/linalg/charpoly.hpp"
#include "senlab/linalg/elimination.hpp"
#include "senlab/padic/series.hpp"
#include "senlab/picard/picard.hpp"

namespace senlab::accept {

using dpseries::DPSeries;
using field::Element;
using field::Field;
using padic::Scalar;
using senmod::Matrix;
using senmod::SenModule;

namespace {

using Rng = std::mt19937_64;

Scalar ex(long p, long n) { return Scalar::exact(p, n); }

Field sqrt3(long prec) { return Field::build({3, {ex(3, -1), ex(3, 1)}, {{ex(3, -3)}, {ex(3, 0)}, {ex(3, 1)}}, prec}); }

Element random_integral(Rng& rng, const Field& k, long prec, long min_val = 0) {
  std::vector<Scalar> c;
  for (long i = 0; i < k.degree(); ++i) {
    const long n = static_cast<long>(rng() % 200) - 100;
    c.push_back(prec >= padic::kExactPrecision ? ex(k.prime(), n) : Scalar::from_integer(k.prime(), n, prec));
  }
  Element x = k.from_coeffs(c);
  for (long v = 0; v < min_val; ++v) x = x * k.from_integer(k.prime());
  return x;
}

Matrix diag(const Field& k, const std::vector<Element>& d) {
  Matrix m(d.size(), d.size(), k.zero());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix weights(const Field& k, const std::vector<long>& ns) {
  std::vector<Element> d;
  for (long n : ns) d.push_back(k.different() * ex(k.prime(), n));
  return diag(k, d);
}

Matrix capped(Matrix a, long prec) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j).with_precision(prec);
  return a;
}

bool agree(const DPSeries& f, const DPSeries& g, long degree) {
  for (long n = 0; n <= degree; ++n)
    if (!(f.coeff(n) - g.coeff(n)).is_zero()) return false;
  return true;
}

std::string num(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

class Recorder {
 public:
  explicit Recorder(Result& r) : r_(r) {}
  bool operator()(const std::string& name, bool pass, const std::string& detail = "") {
    r_.checks.push_back({name, pass, detail});
    return pass;
  }

 private:
  Result& r_;
};

// Exactness at truncation over Q_3(sqrt 3).
void criterion1(Result& res) {
  Recorder check(res);
  const long prec = 40, n = 24;
  const Field k = sqrt3(prec);
  const Element e = k.different();
  Rng rng(101);
  int good = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<Element> c;
    for (long i = 0; i <= n; ++i) c.push_back(random_integral(rng, k, prec));
    const DPSeries g(e, c);
    const DPSeries f = solve_theta(g);
    if (f.integral() && agree(sen_theta(f), g, n - 1)) ++good;
  }
  check("theta(solve_theta(g)) = g through degree 23, 20 random integral g", good == 20, std::to_string(good) + "/20");
  const auto ech = linalg::eliminate(dpseries::theta_matrix(e, n));
  linalg::certify_rank(ech, mpq_class(prec, 2));
  const auto ker = linalg::kernel_basis(ech);
  bool constants = ker.size() == 1;
  if (constants)
    for (std::size_t i = 1; i < ker[0].size(); ++i) constants = constants && ker[0][i].is_zero();
  check("ker theta = constants", constants, "nullity " + std::to_string(ker.size()));
}

// Closed form of solve_theta(1).
void criterion2(Result& res) {
  Recorder check(res);
  const long n = 32;
  for (const Field& k : {sqrt3(40), Field::qp(5, 40)}) {
    const Element e = k.different();
    const DPSeries s = solve_theta(DPSeries::one(e, n));
    Element expect = k.one();
    bool exact = s.coeff(0).is_zero();
    for (long m = 1; m <= n; ++m) {
      if (m > 1) expect = expect * (-e) * ex(k.prime(), m - 1);
      exact = exact && s.coeff(m).identical(expect);
    }
    const std::string where = "p = " + std::to_string(k.prime()) + ", e_ram = " + std::to_string(k.ramification());
    check("c_n = (-e)^(n-1) (n-1)! for n = 1..32, " + where, exact);
    check("solve_theta(1) = log_t, " + where, agree(s, dpseries::log_t(e, n), n));
  }
}

// f(a + b + e a b) = (1 + e b)^(Theta/e) f(a) on the regular representation.
void criterion3(Result& res) {
  Recorder check(res);
  const long prec = 40, n = 16;
  const Field k = sqrt3(prec);
  const Element e = k.different();
  const SenModule reg(dpseries::theta_matrix(e, n), e);
  Rng rng(303);
  mpq_class worst = prec;
  for (int t = 0; t < 10; ++t) {
    std::vector<Element> c;
    for (long i = 0; i <= n; ++i) c.push_back(random_integral(rng, k, prec));
    const DPSeries f(e, c);
    const Element b = random_integral(rng, k, prec, 1 + t % 2);
    const DPSeries lhs = coaction(f, b);
    const Matrix s = senmod::operator_series(reg, b);
    const std::vector<Element> rhs = s * c;
    for (long i = 0; i <= n; ++i) {
      const Element d = lhs.coeff(i) - rhs[static_cast<std::size_t>(i)];
      const mpq_class v = d.valuation().value;
      if (v < worst) worst = v;
    }
  }
  check("coaction = operator series on 10 random (f, b), entries agree to precision - 4", worst >= prec - 4,
        "min valuation of difference " + num(worst));
}

// Group law and Breuil-Kisin sanity of the operator series.
void criterion4(Result& res) {
  Recorder check(res);
  const long prec = 40;
  const Field k = sqrt3(prec);
  const Element e = k.different();
  Rng rng(404);
  mpq_class worst = prec;
  int tested = 0;
  for (int t = 0; t < 10; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t) % 4;
    std::vector<long> w;
    for (std::size_t i = 0; i < d; ++i) w.push_back(static_cast<long>(rng() % 7) - 3);
    Matrix theta = weights(k, w);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) theta(i, j) = theta(i, j) + random_integral(rng, k, prec, 1);
    const SenModule m(theta);
    if (!senmod::nearly_ht_test(m).verdict) continue;
    ++tested;
    const Element b1 = random_integral(rng, k, prec, 1), b2 = random_integral(rng, k, prec, 1);
    const Matrix diff =
        senmod::operator_series(m, b1) * senmod::operator_series(m, b2) - senmod::operator_series(m, b1 + b2 + e * b1 * b2);
    worst = std::min(worst, linalg::min_entry_bound(diff));
  }
  check("S(b) S(b') = S(b + b' + e b b') on 10 random nearly-HT Theta", tested == 10 && worst >= prec - 4,
        std::to_string(tested) + " modules, min valuation " + num(worst));

  const Element b = k.from_integer(3) * (k.one() + k.pi());
  for (long n : {0L, 1L, 3L}) {
    const Matrix s = senmod::operator_series(senmod::bk_module(k, n), b);
    const Element expect = field::pow(k.one() + e * b, static_cast<unsigned long>(n));
    check("Theta = e n gives (1 + e b)^n exactly, n = " + std::to_string(n), s(0, 0).identical(expect) && s(0, 0).is_exact());
  }
  const Matrix inv = senmod::operator_series(senmod::bk_module(k, -1), b);
  const Element r = inv(0, 0) * (k.one() + e * b) - k.one();
  check("Theta = -e gives (1 + e b)^-1 to precision - 4", r.valuation().value >= prec - 4,
        "residual bound " + num(r.valuation().value));
}

// Classifier examples and the resultant oracle.
void criterion5(Result& res) {
  Recorder check(res);
  const long prec = 40;
  const Field k = sqrt3(prec);
  Matrix nil(2, 2, k.zero());
  nil(0, 1) = k.from_integer(-1);
  check("integer-weight diagonal is nearly HT", senmod::nearly_ht_test(SenModule(weights(k, {0, 1, -3}))).verdict);
  check("identity over ramified K is not nearly HT",
        !senmod::nearly_ht_test(SenModule(Matrix::identity(2, k.zero(), k.one()))).verdict);
  const Field q = Field::qp(3, prec);
  const Element third = q.one() / q.from_integer(3);
  check("eigenvalue of valuation -1 is not nearly HT", !senmod::nearly_ht_test(SenModule(diag(q, {third, third}))).verdict);
  check("nilpotent Theta is nearly HT", senmod::nearly_ht_test(SenModule(nil)).verdict);

  Rng rng(505);
  int good = 0;
  for (int t = 0; t < 20; ++t) {
    const Field& f = t % 2 ? k : q;
    const std::size_t d = 1 + static_cast<std::size_t>(t) % 4;
    Matrix theta(d, d, f.zero());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) theta(i, j) = random_integral(rng, f, padic::kExactPrecision);
    const Element e = f.different();
    const Matrix qm = linalg::power(theta, 3) - theta * field::pow(e, 2UL);
    const auto direct = linalg::char_poly(qm);
    bool same = true;
    for (long tv = 0; tv <= static_cast<long>(d) + 1; ++tv) {
      const Element tt = f.from_integer(tv);
      Element val = f.zero();
      for (std::size_t i = direct.size(); i-- > 0;) val = val * tt + direct[i];
      const Element oracle = resultant_char_q(theta, e, tt);
      same = same && val.is_exact() && oracle.is_exact() && (val - oracle).is_zero();
    }
    if (same) ++good;
  }
  check("resultant oracle = char(Q) exactly on 20 random Theta, d <= 4", good == 20, std::to_string(good) + "/20");
}

// Sen-module cohomology.
void criterion6(Result& res) {
  Recorder check(res);
  const long prec = 40;
  const Field k = sqrt3(prec);
  Rng rng(606);
  int good = 0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t d = 1 + static_cast<std::size_t>(t) % 4;
    std::vector<long> w;
    for (std::size_t i = 0; i < d; ++i) w.push_back(static_cast<long>(rng() % 4) - 1);
    Matrix n(d, d, k.zero());
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) n(i, j) = random_integral(rng, k, padic::kExactPrecision);
    const Matrix id = Matrix::identity(d, k.zero(), k.one());
    Matrix pinv = id, pw = id;
    for (std::size_t i = 1; i < d; ++i) {
      pw = pw * n;
      pinv = i % 2 ? pinv - pw : pinv + pw;
    }
    const Matrix theta = capped((id + n) * weights(k, w) * pinv, prec);
    const auto h = senmod::cohomology(SenModule(theta));
    long zeros = 0;
    for (long x : w) zeros += x == 0;
    if (h.h0.size() == h.h1.size() && static_cast<long>(h.h0.size()) == zeros) ++good;
  }
  check("h0 = h1 on 50 random modules", good == 50, std::to_string(good) + "/50");
  for (std::size_t d : {1u, 3u}) {
    const auto z = senmod::cohomology(SenModule(Matrix(d, d, k.zero())));
    check("Theta = 0, d = " + std::to_string(d) + " gives (d, d)", z.h0.size() == d && z.h1.size() == d);
  }
  Matrix nil(2, 2, k.zero());
  nil(0, 1) = k.from_integer(-1);
  const auto c = senmod::cohomology(SenModule(nil));
  check("nilpotent module gives (1, 1)", c.h0.size() == 1 && c.h1.size() == 1);
  Matrix inv = weights(k, {1, -2});
  inv(0, 1) = k.one();
  const auto ci = senmod::cohomology(SenModule(inv));
  check("invertible Theta gives (0, 0)", ci.h0.empty() && ci.h1.empty());
}

// Tate bound, uniform in the level.
void criterion7(Result& res) {
  Recorder check(res);
  const long p = 3, a = 2, prec = 40;
  std::vector<long> ns;
  for (long n = -10; n <= 10; ++n)
    if (n != 0) ns.push_back(n);
  std::vector<gamma::RhoReport> reports;
  for (long m = 1; m <= 3; ++m) reports.push_back(gamma::rho_bound(gamma::build_level(p, m, a, prec), ns));
  long delta = reports[0].delta;
  for (const auto& r : reports) delta = std::max(delta, r.delta);
  bool bounded = true;
  std::ostringstream table;
  for (std::size_t m = 0; m < reports.size(); ++m) {
    table << (m ? "; " : "") << "m=" << m + 1 << " delta=" << reports[m].delta;
    for (auto [n, x] : reports[m].per_n) bounded = bounded && x <= delta;
  }
  check("a single delta = " + std::to_string(delta) + " bounds all norm exponents, n in [-10, 10] minus 0", bounded,
        table.str());
  bool uniform = true;
  for (const auto& r : reports) uniform = uniform && r.delta == reports[0].delta;
  check("per-level maxima agree across m = 1, 2, 3 (a = 2)", uniform, table.str());
}

// Neumann inversion of g - 1.
void criterion8(Result& res) {
  Recorder check(res);
  const long p = 3, prec = 40;
  const auto level = gamma::build_level(p, 2, 10, prec);
  const auto t = gamma::g_minus_one(level, ex(p, 1), 8);
  const auto norm = gamma::norm_exponent(t.rho_m);
  check("|rho M| < 1", !norm || *norm < 0, norm ? "|rho M| = 3^" + std::to_string(*norm) : "rho M = 0");
  check("kernel_check = 0", gamma::kernel_check(t) == 0);
  Rng rng(808);
  long worst = padic::kExactPrecision, worst_res = padic::kExactPrecision;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Scalar> rhs;
    for (std::size_t i = 0; i < t.matrix.rows(); ++i) rhs.push_back(Scalar::from_integer(p, static_cast<long>(rng() % 2001) - 1000, prec));
    // the finite sum is exact since rho M is strictly block upper triangular
    const auto r = gamma::neumann_invert(t, rhs, true);
    const auto dense = gamma::dense_solve(t, rhs);
    for (std::size_t i = 0; i < rhs.size(); ++i) worst = std::min(worst, (r.solution[i] - dense[i]).valuation());
    worst_res = std::min(worst_res, r.residual_valuation);
  }
  check("Neumann = dense solve to precision - 4 on 5 random right-hand sides", worst >= prec - 4,
        "min valuation of difference " + std::to_string(worst) + ", residual " + std::to_string(worst_res));
}

// Picard boundary sequence.
void criterion9(Result& res) {
  Recorder check(res);
  const long prec = 30;
  for (long p : {3L, 5L}) {
    const std::string at = " (p = " + std::to_string(p) + ")";
    const Field q = Field::qp(p, prec);
    check("boundary(1) = 1/p" + at, picard::boundary(q.one()) == picard::BoundaryValue{p, 1, 1});
    check("boundary(p) = 0" + at, picard::boundary(q.from_integer(p)).is_zero());
    const auto lat = picard::kernel_lattice(q, 0);
    check("kernel_lattice(s = 0) = p Z_p, image order p" + at,
          lat.kernel_basis.size() == 1 && lat.kernel_basis[0].identical(q.from_integer(p)) && lat.image_order == 1);

    const Field c = gamma::cyclotomic_field(p, 1, prec);
    const Element z = c.one() + c.pi();
    // companion matrix of Phi_p: trace is minus the z^(p-2) coefficient
    const Scalar companion_trace = ex(p, -1);
    check("Tr(zeta_p) matches the companion-matrix trace" + at, (z.trace() - companion_trace).is_zero());
    check("boundary(zeta_p) = (p-1)/p" + at, picard::boundary(z) == picard::BoundaryValue{p, p - 1, 1});

    const field::Homomorphism h(q, c.y(), c.from_integer(p));
    Rng rng(909 + static_cast<unsigned long>(p));
    int good = 0;
    for (int t = 0; t < 10; ++t) {
      const mpq_class x(static_cast<long>(rng() % 20001) - 10000, p * p * p);
      if (picard::functoriality_check(h, q.from_scalar(Scalar::from_rational(p, x, prec))).holds) ++good;
    }
    check("boundary_L(x) = [L:K] boundary_K(x), 10 random x, L = Q_p(zeta_p)" + at, good == 10,
          std::to_string(good) + "/10");
    bool witnesses = true;
    for (const Field& k : {q, c})
      for (long n = 1; n <= 5; ++n) witnesses = witnesses && picard::boundary(picard::surjectivity_witness(k, n)).den_pow == n;
    check("witness of order p^k for k <= 5" + at, witnesses);
  }
}

// log identity.
void criterion10(Result& res) {
  Recorder check(res);
  const long p = 3, prec = 40, n = 32;
  const Field k = Field::qp(p, prec);
  const Element e = k.different();
  const DPSeries l = dpseries::log_t(e, n);
  Rng rng(1010);
  int good = 0;
  long complete = n;
  for (int t = 0; t < 5; ++t) {
    const long v = 1 + t % 2;
    long u = static_cast<long>(rng() % 1000) + 1;
    if (u % p == 0) ++u;
    const Scalar bs = Scalar::from_integer(p, u * (v == 1 ? p : p * p), prec);
    const DPSeries d = coaction(l, k.from_scalar(bs)) - l;
    const Scalar lg = padic::padic_log(Scalar::one(p) + e.coeff(0, 0) * bs, prec);
    bool ok = (d.coeff(0) - k.from_scalar(lg)).is_zero();
    complete = std::min(complete, d.complete_degree());
    for (long m = 1; m <= d.complete_degree(); ++m) ok = ok && d.coeff(m).is_zero();
    if (ok) ++good;
  }
  check("coaction(log_t, b) - log_t = log(1 + e b) for 5 admissible b", good == 5,
        std::to_string(good) + "/5, coefficients checked through degree " + std::to_string(complete));
}

struct Entry {
  const char* title;
  double budget;
  void (*fn)(Result&);
};

const Entry kEntries[kCriteria] = {
    {"exactness at truncation", 1, criterion1},
    {"solve_theta(1) closed form", 0.1, criterion2},
    {"coaction equals operator series", 5, criterion3},
    {"operator-series group law", 5, criterion4},
    {"nearly Hodge-Tate classifier", 5, criterion5},
    {"Sen-module cohomology", 1, criterion6},
    {"Tate bound uniform in m", 30, criterion7},
    {"Neumann inversion of g - 1", 30, criterion8},
    {"Picard boundary sequence", 5, criterion9},
    {"log identity", 1, criterion10},
};

}  // namespace

bool Result::pass() const {
  if (!error.empty() || checks.empty() || !within_budget()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Element resultant_char_q(const Matrix& theta, const Element& e, const Element& t) {
  const Field& k = e.field();
  const long p = k.prime();
  const auto f = linalg::char_poly(theta);  // ascending, monic, degree d
  const std::size_t d = f.size() - 1;
  std::vector<Element> g(static_cast<std::size_t>(p) + 1, k.zero());
  g[0] = t;
  g[1] = field::pow(e, static_cast<unsigned long>(p - 1));
  g[static_cast<std::size_t>(p)] = g[static_cast<std::size_t>(p)] - k.one();
  const std::size_t n = d + static_cast<std::size_t>(p);
  Matrix syl(n, n, k.zero());
  for (std::size_t r = 0; r < static_cast<std::size_t>(p); ++r)
    for (std::size_t i = 0; i <= d; ++i) syl(r, r + i) = f[d - i];
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i <= static_cast<std::size_t>(p); ++i) syl(static_cast<std::size_t>(p) + r, r + i) = g[static_cast<std::size_t>(p) - i];
  // division-free determinant: constant term of the characteristic polynomial
  const auto cs = linalg::char_poly(syl);
  return n % 2 ? -cs[0] : cs[0];
}

Result run(int id) {
  if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
  const Entry& s = kEntries[id - 1];
  Result r;
  r.id = id;
  r.title = s.title;
  r.budget = s.budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    s.fn(r);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<int> suite(const std::string& name) {
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (name == "dps" || name == "dpseries") return {1, 2, 3, 10};
  if (name == "senmod") return {4, 5, 6};
  if (name == "gamma") return {7, 8};
  if (name == "picard") return {9};
  try {
    std::size_t used = 0;
    const int id = std::stoi(name, &used);
    if (used == name.size() && id >= 1 && id <= kCriteria) return {id};
  } catch (const std::exception&) {
  }
  throw UsageError("unknown acceptance suite \"" + name + "\" (all, dps, senmod, gamma, picard or 1..10)");
}

std::string summary_line(const Result& r) {
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.3f s / %g s", r.seconds, r.budget);
  std::string line = std::string(r.pass() ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.title + " (" + timing + ")";
  if (!r.error.empty()) line += "\n    error: " + r.error;
  if (!r.within_budget()) line += "\n    over the runtime budget";
  for (const auto& c : r.checks) {
    line += std::string("\n    ") + (c.pass ? "ok   " : "FAIL ") + c.name;
    if (!c.detail.empty()) line += " [" + c.detail + "]";
  }
  return line;
}

}  // namespace senlab::accept
