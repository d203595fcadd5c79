#include <doctest.h>

#include <random>

#include "senlab/error.hpp"
#include "senlab/padic/newton.hpp"
#include "senlab/padic/poly.hpp"
#include "senlab/padic/scalar.hpp"
#include "senlab/padic/series.hpp"

using namespace senlab;
using namespace senlab::padic;

namespace {

// Lower hull vertices by brute force: a point is a vertex when some line
// through it has every other point strictly above, except collinear ends.
std::vector<std::pair<long, mpq_class>> brute_force_vertices(const std::vector<std::pair<long, mpq_class>>& pts) {
  std::vector<std::pair<long, mpq_class>> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    // k is a vertex iff it lies strictly below every chord between a point
    // to its left and a point to its right, and is not above any point at
    // the ends.
    bool vertex = true;
    for (std::size_t i = 0; i < pts.size() && vertex; ++i) {
      for (std::size_t j = 0; j < pts.size() && vertex; ++j) {
        if (pts[i].first >= pts[k].first || pts[j].first <= pts[k].first) continue;
        const mpq_class t(pts[k].first - pts[i].first, pts[j].first - pts[i].first);
        const mpq_class chord = pts[i].second + (pts[j].second - pts[i].second) * t;
        if (pts[k].second >= chord) vertex = false;
      }
    }
    out.push_back(pts[k]);
    if (!vertex) out.pop_back();
  }
  return out;
}

Scalar rational(long p, long num, long den, long prec) { return Scalar::from_rational(p, mpq_class(num, den), prec); }

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  const auto x = Scalar::from_integer(5, 2, 10);
  const auto y = Scalar::from_integer(5, 3, 10);
  const auto s = x + y;
  CHECK_FALSE(s.is_zero());
  CHECK(s.valuation() == 1);
  CHECK(s.unit() == 1);
  CHECK(s.precision() == 10);

  // absorbing zero shifts the precision by v(x)
  const auto z = Scalar::zero(5, 10);
  const auto w = Scalar::from_integer(5, 50, 20);  // v = 2
  const auto prod = w * z;
  CHECK(prod.is_zero());
  CHECK(prod.precision() == 12);

  // 1 / (1 - p): geometric-series oracle sum_{k<N} p^k
  for (long p : {2L, 3L, 5L, 7L}) {
    const long n = 15;
    const auto q = Scalar::from_integer(p, 1, n) / Scalar::from_integer(p, 1 - p, n);
    mpz_class geometric = 0;
    for (long k = 0; k < n; ++k) geometric += prime_power(p, k);
    CHECK(q.precision() == n);
    CHECK(q.unit() == geometric);
    CHECK((q * Scalar::from_integer(p, 1 - p, n) - Scalar::one(p)).is_zero());
  }
}

TEST_CASE("scalar errors") {
  CHECK_THROWS_AS(Scalar::one(3) / Scalar::zero(3, 10), PrecisionError);
  CHECK_THROWS_AS(Scalar::one(3) + Scalar::one(5), UsageError);
}

TEST_CASE("precision propagation rules") {
  const long p = 3;
  const auto x = Scalar::from_integer(p, 9 * 2, 10);   // v = 2, N = 10
  const auto y = Scalar::from_integer(p, 3 * 5, 7);    // v = 1, N = 7
  CHECK((x + y).precision() == 7);
  CHECK((x * y).precision() == std::min(10 + 1, 7 + 2));
  CHECK((x / y).precision() == std::min(10 - 1, 7 - 2 + 2));
  CHECK((x / y).valuation() == 1);
}

TEST_CASE("precision soundness against exact rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-5000, 5000);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int trial = 0; trial < 200; ++trial) {
      // denominators free of p
      long dr = 1 + static_cast<long>(rng() % 40);
      long ds = 1 + static_cast<long>(rng() % 40);
      while (dr % p == 0) ++dr;
      while (ds % p == 0) ++ds;
      mpq_class r(num(rng), dr), s(num(rng), ds);
      r.canonicalize();
      s.canonicalize();
      if (r == 0 || s == 0) continue;
      const long nr = 8 + static_cast<long>(rng() % 10), ns = 8 + static_cast<long>(rng() % 10);
      const auto xr = Scalar::from_rational(p, mpq_class(r), nr);
      const auto xs = Scalar::from_rational(p, mpq_class(s), ns);
      auto check = [&](const mpq_class& exact, const Scalar& got) {
        const auto reference = Scalar::from_rational(p, exact, got.precision());
        CHECK((reference - got).is_zero());
      };
      check(r + s, xr + xs);
      check(r - s, xr - xs);
      check(r * s, xr * xs);
      check(r / s, xr / xs);
    }
  }
}

TEST_CASE("padic_exp") {
  CHECK(padic_exp(Scalar::zero(5, 12)).unit() == 1);
  const auto x = Scalar::from_integer(5, 5, 12);
  const auto ex = padic_exp(x);
  CHECK((padic_log(ex) - x).is_zero());
  CHECK((ex - Scalar::one(5)).valuation() >= 1);
  CHECK_THROWS_AS(padic_exp(Scalar::from_integer(2, 2, 20)), DomainError);
  CHECK_NOTHROW(padic_exp(Scalar::from_integer(2, 4, 20)));
  CHECK_THROWS_AS(padic_exp(Scalar::from_integer(3, 2, 20)), DomainError);
}

TEST_CASE("padic_log") {
  const auto l1 = padic_log(Scalar::from_integer(5, 1, 10));
  CHECK(l1.is_zero());
  const auto six = Scalar::from_integer(5, 6, 10);
  CHECK((padic_log(six * six) - Scalar::exact(5, 2) * padic_log(six)).is_zero());
  // series oracle: first term (x - 1) = 3 dominates
  CHECK(padic_log(Scalar::from_integer(3, 4, 20)).valuation() == 1);
  CHECK_THROWS_AS(padic_log(Scalar::from_integer(3, 2, 20)), DomainError);
}

TEST_CASE("exp and log are inverse on the convergence disc") {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L}) {
    for (int trial = 0; trial < 20; ++trial) {
      const long need = exp_min_valuation(p);
      const mpz_class u = 1 + static_cast<long>(rng() % 1000);
      const auto x = Scalar::from_integer(p, u * prime_power(p, need), 30);
      CHECK((padic_log(padic_exp(x)) - x).is_zero());
      const auto y = Scalar::one(p) + x;
      CHECK((padic_exp(padic_log(y)) - y).is_zero());
    }
  }
}

TEST_CASE("log is additive on products") {
  std::mt19937_64 rng(5);
  const long p = 3;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = Scalar::one(p) + Scalar::from_integer(p, 3 * static_cast<long>(rng() % 100), 25);
    const auto b = Scalar::one(p) + Scalar::from_integer(p, 3 * static_cast<long>(rng() % 100), 25);
    CHECK((padic_log(a * b) - padic_log(a) - padic_log(b)).is_zero());
  }
}

TEST_CASE("newton polygon examples") {
  const long p = 5, n = 20;
  const auto eis = newton_polygon(Poly::monic_from_integers(p, {-p, 0}, n));
  REQUIRE(eis.slopes.size() == 1);
  CHECK(eis.slopes[0].root_valuation == mpq_class(1, 2));
  CHECK(eis.slopes[0].multiplicity == 2);

  const auto split = newton_polygon(Poly::monic_from_integers(p, {p, -(1 + p)}, n));
  CHECK(split.slope_multiset() == std::vector<mpq_class>{1, 0});

  const auto three = newton_polygon(Poly::monic_from_integers(p, {p * p * p, p, 0}, n));
  REQUIRE(three.vertices.size() == 3);
  CHECK(three.vertices[0].index == 0);
  CHECK(three.vertices[0].valuation == 3);
  CHECK(three.vertices[1].index == 1);
  CHECK(three.vertices[1].valuation == 1);
  CHECK(three.vertices[2].index == 3);
  CHECK(three.slope_multiset() == std::vector<mpq_class>{2, mpq_class(1, 2), mpq_class(1, 2)});
  const auto oracle = brute_force_vertices({{0, 3}, {1, 1}, {3, 0}});
  REQUIRE(oracle.size() == 3);
}

TEST_CASE("newton polygon refuses hull-relevant unknown coefficients") {
  const long p = 3;
  std::vector<Scalar> c{Scalar::zero(p, 1), Scalar::from_integer(p, 3, 20), Scalar::one(p)};
  CHECK_THROWS_AS(newton_polygon(Poly(c)), PrecisionError);
  // a zero far above the hull is harmless
  std::vector<Scalar> d{Scalar::from_integer(p, 3, 20), Scalar::zero(p, 20), Scalar::one(p)};
  CHECK(newton_polygon(Poly(d)).slopes.size() == 1);
}

TEST_CASE("newton polygon matches brute-force hull on random polynomials") {
  std::mt19937_64 rng(3);
  const long p = 3;
  for (int trial = 0; trial < 100; ++trial) {
    const long d = 1 + static_cast<long>(rng() % 6);
    std::vector<Scalar> c;
    std::vector<std::pair<long, mpq_class>> pts;
    for (long i = 0; i < d; ++i) {
      const long v = static_cast<long>(rng() % 5);
      const long u = 1 + 3 * static_cast<long>(rng() % 10);  // unit
      c.push_back(Scalar::from_parts(p, v, u, 30));
      pts.push_back({i, v});
    }
    c.push_back(Scalar::one(p));
    pts.push_back({d, 0});
    const auto poly = newton_polygon(Poly(c));
    const auto oracle = brute_force_vertices(pts);
    REQUIRE(poly.vertices.size() == oracle.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(poly.vertices[k].index == oracle[k].first);
      CHECK(poly.vertices[k].valuation == oracle[k].second);
    }
    CHECK(poly.degree() == d);
  }
}

TEST_CASE("newton slopes under root rescaling and products") {
  std::mt19937_64 rng(9);
  const long p = 5, prec = 40;
  auto random_monic = [&](long d) {
    std::vector<Scalar> c;
    for (long i = 0; i < d; ++i) {
      c.push_back(Scalar::from_parts(p, static_cast<long>(rng() % 4), 1 + 5 * static_cast<long>(rng() % 7), prec));
    }
    c.push_back(Scalar::one(p));
    return Poly(c);
  };
  for (int trial = 0; trial < 30; ++trial) {
    const long d = 2 + static_cast<long>(rng() % 3);
    const Poly f = random_monic(d);
    const auto base = newton_polygon(f).slope_multiset();

    // roots divided by a unit u: coefficients c_i * u^(d-i)
    const auto u = Scalar::from_integer(p, 2, prec);
    std::vector<Scalar> unit_scaled, shifted;
    const long c = 1 + static_cast<long>(rng() % 2);
    for (long i = 0; i <= d; ++i) {
      unit_scaled.push_back(f[static_cast<std::size_t>(i)] * pow(u, static_cast<unsigned long>(d - i)));
      shifted.push_back(f[static_cast<std::size_t>(i)] * pow(Scalar::exact(p, p), static_cast<unsigned long>(c * (d - i))));
    }
    CHECK(newton_polygon(Poly(unit_scaled)).slope_multiset() == base);
    auto expected = base;
    for (auto& s : expected) s += c;
    CHECK(newton_polygon(Poly(shifted)).slope_multiset() == expected);

    const Poly g = random_monic(1 + static_cast<long>(rng() % 3));
    auto joined = base;
    const auto gs = newton_polygon(g).slope_multiset();
    joined.insert(joined.end(), gs.begin(), gs.end());
    std::sort(joined.begin(), joined.end(), std::greater<>());
    CHECK(newton_polygon(f * g).slope_multiset() == joined);
  }
}
