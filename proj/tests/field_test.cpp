#include <doctest.h>

#include <random>

#include "senlab/error.hpp"
#include "senlab/field/field.hpp"
#include "senlab/field/finite_field.hpp"

using namespace senlab;
using namespace senlab::field;
using padic::Scalar;

namespace {

Scalar ex(long p, long n) { return Scalar::exact(p, n); }

Field sqrt3(long prec = 40) {
  LocalFieldSpec s{3, {ex(3, -1), ex(3, 1)}, {{ex(3, -3)}, {ex(3, 0)}, {ex(3, 1)}}, prec};
  return Field::build(s);
}

// Q_p(zeta_{p^m}) with E(u) = Phi_{p^m}(1 + u)
Field cyclotomic(long p, long m, long prec = 40) {
  long q = 1;
  for (long k = 1; k < m; ++k) q *= p;
  // Phi(z) = sum_{k<p} z^(k q); expand at z = 1 + u
  std::vector<mpz_class> coeffs(static_cast<std::size_t>((p - 1) * q + 1), 0);
  for (long k = 0; k < p; ++k) {
    for (long r = 0; r <= k * q; ++r) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k * q), static_cast<unsigned long>(r));
      coeffs[static_cast<std::size_t>(r)] += b;
    }
  }
  LocalFieldSpec s;
  s.p = p;
  s.prec = prec;
  s.unramified = {ex(p, -1), ex(p, 1)};
  for (const auto& c : coeffs) s.eisenstein.push_back({Scalar::exact(p, c)});
  return Field::build(s);
}

Element random_element(std::mt19937_64& rng, const Field& k, long prec) {
  std::vector<Scalar> c;
  for (long i = 0; i < k.degree(); ++i) {
    c.push_back(Scalar::from_integer(k.prime(), static_cast<long>(rng() % 2000) - 1000, prec));
  }
  return k.from_coeffs(c);
}

// Trace through the explicit multiplication matrix.
Scalar matrix_oracle_trace(const Element& x) { return matrix_trace(x.multiplication_matrix()); }

}  // namespace

TEST_CASE("finite field irreducibility") {
  CHECK(fp_irreducible({1, 0, 1}, 3));       // y^2 + 1 over F_3
  CHECK_FALSE(fp_irreducible({1, 0, 1}, 5)); // 2^2 = -1 mod 5
  CHECK(fp_irreducible({1, 1, 0, 1}, 2));    // y^3 + y + 1
  CHECK_FALSE(fp_irreducible({0, 0, 1}, 7));
  CHECK(fp_irreducible({3, 1}, 7));
}

TEST_CASE("build_field examples") {
  const auto q5 = Field::build({5, {ex(5, -1), ex(5, 1)}, {{ex(5, -5)}, {ex(5, 1)}}, 30});
  CHECK(q5.ramification() == 1);
  CHECK(q5.different().identical(q5.one()));
  CHECK(q5.pi().valuation().value == 1);

  const auto k = sqrt3();
  CHECK(k.ramification() == 2);
  CHECK(k.degree() == 2);
  const auto e = k.different();
  CHECK((e - k.from_integer(2) * k.pi()).is_zero());
  CHECK(e.valuation().value == mpq_class(1, 2));
  CHECK(e.valuation().exact);

  // f = 2: g = y^2 + 1, E = u^2 - 6u - 3
  const auto k4 = Field::build({3, {ex(3, 1), ex(3, 0), ex(3, 1)}, {{ex(3, -3)}, {ex(3, -6)}, {ex(3, 1)}}, 30});
  CHECK(k4.residue_degree() == 2);
  CHECK(k4.ramification() == 2);
  CHECK(k4.degree() == 4);
  CHECK(k4.one().trace().unit() == 4);

  // rejected presentations
  CHECK_THROWS_AS(Field::build({3, {ex(3, -1), ex(3, 1)}, {{ex(3, -9)}, {ex(3, 0)}, {ex(3, 1)}}, 30}), DomainError);
  CHECK_THROWS_AS(Field::build({3, {ex(3, -1), ex(3, 1)}, {{ex(3, -3)}, {ex(3, 1)}, {ex(3, 1)}}, 30}), DomainError);
  CHECK_THROWS_AS(Field::build({5, {ex(5, 1), ex(5, 0), ex(5, 1)}, {{ex(5, -5)}, {ex(5, 1)}}, 30}), DomainError);
  CHECK_THROWS_AS(Field::build({4, {ex(2, -1), ex(2, 1)}, {{ex(2, -2)}, {ex(2, 1)}}, 30}), UsageError);
}

TEST_CASE("element arithmetic examples") {
  const auto k = sqrt3();
  const auto pi = k.pi();
  CHECK((pi * pi).identical(k.from_integer(3)));
  const auto x = k.from_coeffs({Scalar::from_integer(3, 7, 20), Scalar::from_integer(3, 5, 20)});
  CHECK((x + (-x)).is_zero());
  CHECK(((k.one() + pi) * (k.one() - pi)).identical(k.from_integer(-2)));
  CHECK(((x / pi) * pi - x).is_zero());
}

TEST_CASE("valuations") {
  const auto k = sqrt3();
  CHECK(k.from_integer(3).valuation().value == 1);
  CHECK(k.pi().valuation().value == mpq_class(1, 2));
  CHECK(k.pi().valuation_pi().value == 1);
  CHECK((k.from_integer(2) * k.pi()).valuation().value == mpq_class(1, 2));
  const auto z = k.zero().with_precision(7);
  CHECK_FALSE(z.valuation().exact);
  CHECK(z.valuation().value == 7);

  std::mt19937_64 rng(4);
  const auto k4 = Field::build({3, {ex(3, 1), ex(3, 0), ex(3, 1)}, {{ex(3, -3)}, {ex(3, -6)}, {ex(3, 1)}}, 60});
  for (const auto& f : {k, k4, cyclotomic(3, 2)}) {
    for (int t = 0; t < 30; ++t) {
      const auto a = random_element(rng, f, 60), b = random_element(rng, f, 60);
      if (a.is_zero() || b.is_zero()) continue;
      const auto va = a.valuation(), vb = b.valuation();
      REQUIRE(va.exact);
      CHECK((a * b).valuation().value == va.value + vb.value);
      const auto s = (a + b).valuation();
      CHECK(s.value >= std::min(va.value, vb.value));
      if (va.value != vb.value) CHECK(s.value == std::min(va.value, vb.value));
    }
  }
}

TEST_CASE("traces") {
  const auto k = sqrt3();
  CHECK(k.one().trace().unit() == 2);
  CHECK(k.pi().trace().is_zero());
  CHECK(matrix_oracle_trace(k.pi()).is_zero());
  for (long p : {3L, 5L, 7L}) {
    const auto c = cyclotomic(p, 1);
    const auto t = c.pi().trace();
    CHECK((t + Scalar::exact(p, p)).is_zero());
    const auto zeta = c.one() + c.pi();
    CHECK((zeta.trace() + Scalar::one(p)).is_zero());
  }
  std::mt19937_64 rng(8);
  const auto c = cyclotomic(3, 2);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_element(rng, c, 40);
    CHECK((x.trace() - matrix_oracle_trace(x)).is_zero());
  }
}

TEST_CASE("residues") {
  const auto k4 = Field::build({3, {ex(3, 1), ex(3, 0), ex(3, 1)}, {{ex(3, -3)}, {ex(3, -6)}, {ex(3, 1)}}, 30});
  CHECK(k4.pi().residue() == std::vector<long>{0, 0});
  CHECK((k4.one() + k4.pi() * k4.y()).residue() == std::vector<long>{1, 0});
  CHECK(k4.y().residue() == std::vector<long>{0, 1});
  CHECK_THROWS_AS((k4.one() / k4.pi()).residue(), DomainError);
}

TEST_CASE("substitutions") {
  const auto k = sqrt3();
  const auto x = k.from_coeffs({Scalar::from_integer(3, 4, 30), Scalar::from_integer(3, 11, 30)});
  const Homomorphism id(k, k.y(), k.pi());
  CHECK(id(x).identical(x));
  const Homomorphism conj(k, k.y(), -k.pi());
  CHECK(conj(k.from_integer(3)).identical(k.from_integer(3)));
  CHECK(conj(k.pi()).identical(-k.pi()));
  CHECK((conj(x).trace() - x.trace()).is_zero());
  CHECK_THROWS_AS(Homomorphism(k, k.y(), k.pi() * k.from_integer(2)), DomainError);

  for (long p : {3L, 5L}) {
    const auto c = cyclotomic(p, 1);
    const auto z = c.one() + c.pi();
    std::mt19937_64 rng(static_cast<unsigned long>(p));
    const auto xs = random_element(rng, c, 40);
    for (long a = 2; a < p; ++a) {
      const Homomorphism s(c, c.y(), pow(z, a) - c.one());
      CHECK((s(xs).trace() - xs.trace()).is_zero());
    }
  }
}

TEST_CASE("different two ways and trace transitivity") {
  for (const auto& k : {sqrt3(), cyclotomic(3, 2), cyclotomic(5, 1)}) {
    const auto& E = k.spec().eisenstein;
    Element sum = k.zero();
    for (std::size_t i = 1; i < E.size(); ++i) {
      sum += k.from_unramified(E[i]) * Scalar::exact(k.prime(), static_cast<long>(i)) * pow(k.pi(), static_cast<unsigned long>(i - 1));
    }
    CHECK((sum - k.different()).is_zero());
    CHECK(k.different().valuation().value >= mpq_class(k.ramification() - 1, k.ramification()));
  }
  // Q_3(sqrt 3) inside Q_3(3^(1/4)) via u -> w^2
  const auto k = sqrt3();
  const auto l = Field::build({3, {ex(3, -1), ex(3, 1)}, {{ex(3, -3)}, {ex(3, 0)}, {ex(3, 0)}, {ex(3, 0)}, {ex(3, 1)}}, 40});
  const Homomorphism emb(k, l.y(), l.pi() * l.pi());
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto x = random_element(rng, k, 40);
    CHECK((emb(x).trace() - Scalar::exact(3, 2) * x.trace()).is_zero());
  }
}
