#include <doctest.h>

#include <random>

#include "senlab/dpseries/dpseries.hpp"
#include "senlab/error.hpp"
#include "senlab/padic/series.hpp"

using namespace senlab;
using namespace senlab::dpseries;
using field::Element;
using field::Field;
using padic::Scalar;

namespace {

Scalar ex(long p, long n) { return Scalar::exact(p, n); }

Field sqrt3(long prec = 40) {
  return Field::build({3, {ex(3, -1), ex(3, 1)}, {{ex(3, -3)}, {ex(3, 0)}, {ex(3, 1)}}, prec});
}

Element random_integral(std::mt19937_64& rng, const Field& k, long prec, long min_val = 0) {
  std::vector<Scalar> c;
  for (long i = 0; i < k.degree(); ++i) {
    c.push_back(Scalar::from_integer(k.prime(), static_cast<long>(rng() % 200) - 100, prec));
  }
  Element x = k.from_coeffs(c);
  for (long v = 0; v < min_val; ++v) x = x * k.from_integer(k.prime());
  return x;
}

DPSeries random_poly(std::mt19937_64& rng, const Element& e, long trunc, long prec) {
  std::vector<Element> c;
  for (long n = 0; n <= trunc; ++n) c.push_back(random_integral(rng, e.field(), prec));
  return DPSeries(e, c);
}

bool agree_through(const DPSeries& f, const DPSeries& g, long degree) {
  for (long n = 0; n <= degree; ++n)
    if (!(f.coeff(n) - g.coeff(n)).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("dp_mul examples") {
  const auto k = sqrt3();
  const auto e = k.different();
  const auto a = DPSeries::variable(e, 6);
  const auto aa = a * a;
  CHECK(aa.coeff(2).identical(k.from_integer(2)));
  const auto f = DPSeries::t(e, 6);
  CHECK(agree_through(f * DPSeries::one(e, 6), f, 6));
  const auto tt = f * f;
  CHECK(tt.coeff(0).identical(k.one()));
  CHECK((tt.coeff(1) - k.from_integer(2) * e).is_zero());
  CHECK((tt.coeff(2) - k.from_integer(2) * e * e).is_zero());
  CHECK(tt.polynomial());
}

TEST_CASE("sen_theta examples") {
  const auto k = sqrt3();
  const auto e = k.different();
  CHECK(sen_theta(DPSeries::one(e, 8)).coeff(0).is_zero());
  const auto ta = sen_theta(DPSeries::variable(e, 8));
  CHECK(ta.coeff(0).identical(k.one()));
  CHECK((ta.coeff(1) - e).is_zero());
  const auto t = DPSeries::t(e, 8);
  const auto tt = sen_theta(t);
  for (long n = 0; n <= 8; ++n) CHECK((tt.coeff(n) - e * t.coeff(n)).is_zero());
}

TEST_CASE("solve_theta examples and exactness") {
  const auto k = sqrt3();
  const auto e = k.different();
  const long n = 24;
  const auto z = solve_theta(DPSeries::zero(e, n));
  for (const auto& c : z.coeffs()) CHECK(c.is_zero());

  const auto s = solve_theta(DPSeries::one(e, n));
  Element expect = k.one();
  for (long m = 1; m <= n; ++m) {
    if (m > 1) expect = expect * (-e) * Scalar::exact(3, m - 1);
    CHECK(s.coeff(m).identical(expect));
  }
  const auto lt = log_t(k, n);
  CHECK(agree_through(s, lt, n));

  const auto r = solve_theta(DPSeries::t(e, n));
  CHECK(agree_through(r, DPSeries::variable(e, n), n));

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_poly(rng, e, n, 40);
    const auto c = solve_theta(g);
    CHECK(c.integral());
    CHECK(agree_through(sen_theta(c), g, n - 1));
  }
}

TEST_CASE("log_t") {
  const auto k = sqrt3();
  const auto e = k.different();
  const auto l = log_t(k, 12);
  CHECK(l.coeff(1).identical(k.one()));
  CHECK((l.coeff(2) + e).is_zero());
  const auto th = sen_theta(l);
  CHECK(th.coeff(0).identical(k.one()));
  for (long n = 1; n < 12; ++n) CHECK(th.coeff(n).is_zero());
  CHECK(th.complete_degree() == 11);
}

TEST_CASE("Leibniz rule") {
  std::mt19937_64 rng(2);
  const auto k = sqrt3();
  const auto e = k.different();
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_poly(rng, e, 10, 40), g = random_poly(rng, e, 10, 40);
    CHECK(agree_through(sen_theta(f * g), sen_theta(f) * g + f * sen_theta(g), 9));
  }
}

TEST_CASE("coaction") {
  std::mt19937_64 rng(3);
  const auto k = sqrt3(40);
  const auto e = k.different();
  const long n = 10;
  const auto f = random_poly(rng, e, n, 40);
  CHECK(agree_through(coaction(f, k.zero()), f, n));

  const auto b = random_integral(rng, k, 40, 1);
  const auto t = DPSeries::t(e, n);
  const auto tb = coaction(t, b);
  for (long m = 0; m <= n; ++m) CHECK((tb.coeff(m) - (k.one() + e * b) * t.coeff(m)).is_zero());

  for (int trial = 0; trial < 4; ++trial) {
    const auto b1 = random_integral(rng, k, 40, 1), b2 = random_integral(rng, k, 40, 1);
    const auto g = random_poly(rng, e, n, 40);
    const auto lhs = coaction(coaction(g, b1), b2);
    const auto rhs = coaction(g, b1 + b2 + e * b1 * b2);
    CHECK(agree_through(lhs, rhs, n));
    const auto h = random_poly(rng, e, 5, 40);
    const auto gs = g.truncated(5);
    CHECK(agree_through(coaction(gs * h, b1), coaction(gs, b1) * coaction(h, b1), 5));
  }
}

TEST_CASE("coaction of log_t adds a constant") {
  for (long p : {3L, 5L}) {
    const auto k = Field::qp(p, 40);
    const auto e = k.different();
    const auto l = log_t(e, 32);
    for (long bv : {1L, 2L}) {
      const auto b = k.from_scalar(Scalar::from_integer(p, 7 * (bv == 1 ? p : p * p), 40));
      const auto d = coaction(l, b) - l;
      const auto log = padic::padic_log(Scalar::one(p) + Scalar::from_integer(p, 7 * (bv == 1 ? p : p * p), 40));
      CHECK((d.coeff(0) - k.from_scalar(log)).is_zero());
      for (long m = 1; m <= d.complete_degree(); ++m) CHECK(d.coeff(m).is_zero());
    }
    CHECK_THROWS_AS(coaction(l, k.one()), ConvergenceError);
  }
}

TEST_CASE("G_a sharp transport") {
  const auto k = sqrt3();
  const auto e = k.different();
  const long n = 12;
  const auto a = DPSeries::variable(e, n);
  const auto to = gsharp_transport(a, Direction::ToGsharp);
  CHECK(agree_through(to, log_t(e, n), n));
  const auto from = gsharp_transport(a, Direction::FromGsharp);
  Element pw = k.one();
  for (long m = 1; m <= n; ++m) {
    CHECK((from.coeff(m) - pw).is_zero());
    pw = pw * e;
  }
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_poly(rng, e, n, 40);
    CHECK(agree_through(gsharp_transport(gsharp_transport(f, Direction::ToGsharp), Direction::FromGsharp), f, n));
    CHECK(agree_through(gsharp_transport(gsharp_transport(f, Direction::FromGsharp), Direction::ToGsharp), f, n));
  }
}
