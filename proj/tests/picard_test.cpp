#include <doctest.h>

#include <random>

#include "senlab/error.hpp"
#include "senlab/gamma/gamma.hpp"
#include "senlab/picard/picard.hpp"

using namespace senlab;
using namespace senlab::picard;

namespace {

BoundaryValue bv(long p, long num, long den_pow) { return BoundaryValue{p, num, den_pow}; }

}  // namespace

TEST_CASE("boundary on Q_p") {
  for (long p : {2L, 3L, 5L}) {
    const auto k = Field::qp(p, 30);
    CHECK(boundary(k.one()) == bv(p, 1, 1));
    CHECK(boundary(k.from_integer(p)).is_zero());
    CHECK_FALSE(in_picard_image(k.one()));
    CHECK(in_picard_image(k.from_integer(p * 7)));
    const auto x = k.from_scalar(Scalar::from_rational(p, mpq_class(1, p * p), 30));
    CHECK(boundary(x) == bv(p, 1, 3));
  }
}

TEST_CASE("boundary on Q_p(zeta_p)") {
  for (long p : {3L, 5L, 7L}) {
    const auto k = gamma::cyclotomic_field(p, 1, 30);
    const auto z = k.one() + k.pi();
    CHECK(boundary(z) == bv(p, p - 1, 1));
    CHECK(in_picard_image(z - z * z));
    CHECK(boundary(k.one()) == bv(p, p - 1, 1));
  }
}

TEST_CASE("linearity") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(-1000, 1000);
  const auto k = gamma::cyclotomic_field(3, 2, 30);
  auto random_x = [&] {
    std::vector<Scalar> c;
    for (long i = 0; i < k.degree(); ++i) c.push_back(Scalar::from_rational(3, mpq_class(d(rng), 27), 30));
    return k.from_coeffs(c);
  };
  for (int t = 0; t < 10; ++t) {
    const auto x = random_x(), y = random_x();
    CHECK(boundary(x + y) == boundary(x) + boundary(y));
    const long c = d(rng);
    CHECK(boundary(x * Scalar::exact(3, c)) == mpz_class(c) * boundary(x));
    const auto bx = boundary(x);
    const auto bpx = boundary(x * Scalar::exact(3, 3));
    CHECK(bpx == mpz_class(3) * bx);
    if (!bx.is_zero()) CHECK(bpx.den_pow == bx.den_pow - 1);
  }
}

TEST_CASE("kernel lattice") {
  const auto q = Field::qp(3, 30);
  const auto l0 = kernel_lattice(q, 0);
  REQUIRE(l0.kernel_basis.size() == 1);
  CHECK(l0.kernel_basis[0].identical(q.from_integer(3)));
  CHECK(l0.image_order == 1);
  CHECK(kernel_lattice(q, 2).image_order == 3);

  for (const auto& k : {gamma::cyclotomic_field(3, 2, 30), gamma::cyclotomic_field(5, 1, 30)}) {
    for (long s : {0L, 1L, 3L}) {
      const auto l = kernel_lattice(k, s);
      CHECK(l.kernel_basis.size() == static_cast<std::size_t>(k.degree()));
      for (const auto& x : l.kernel_basis) CHECK(in_picard_image(x));
      // the pivot generator has boundary of order exactly p^image_order
      if (l.pivot >= 0) CHECK(boundary(l.lattice_basis[static_cast<std::size_t>(l.pivot)]).den_pow == l.image_order);
      for (const auto& x : l.lattice_basis) CHECK(boundary(x).den_pow <= l.image_order);
    }
  }
}

TEST_CASE("surjectivity witnesses") {
  for (const auto& k : {Field::qp(3, 30), gamma::cyclotomic_field(3, 1, 30), gamma::cyclotomic_field(5, 1, 30)}) {
    for (long n = 0; n <= 5; ++n) CHECK(boundary(surjectivity_witness(k, n)).den_pow == n);
  }
}

TEST_CASE("functoriality") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-5000, 5000);
  for (long p : {3L, 5L}) {
    const auto k = Field::qp(p, 30);
    const auto l = gamma::cyclotomic_field(p, 1, 30);
    const field::Homomorphism h(k, l.y(), l.from_integer(p));
    CHECK(functoriality_check(h, k.one()).holds);
    CHECK(functoriality_check(h, k.one()).lhs == bv(p, p - 1, 1));
    for (int t = 0; t < 10; ++t) {
      const auto x = k.from_scalar(Scalar::from_rational(p, mpq_class(d(rng), p * p * p), 30));
      const auto r = functoriality_check(h, x);
      CHECK(r.relative_degree == p - 1);
      CHECK(r.holds);
    }
    const field::Homomorphism id(l, l.y(), l.pi());
    CHECK(functoriality_check(id, l.one() + l.pi()).holds);
  }
}
