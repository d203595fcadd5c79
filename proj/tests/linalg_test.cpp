#include <doctest.h>

#include <random>

#include "senlab/error.hpp"
#include "senlab/linalg/charpoly.hpp"
#include "senlab/linalg/elimination.hpp"
#include "senlab/padic/scalar.hpp"

using namespace senlab;
using namespace senlab::padic;
using linalg::Matrix;

namespace {

Matrix<Scalar> random_matrix(std::mt19937_64& rng, long p, std::size_t n, long prec) {
  Matrix<Scalar> m(n, n, Scalar::zero(p));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Scalar::from_integer(p, static_cast<long>(rng() % 200) - 100, prec);
  return m;
}

// Laplace expansion, exact enough for n <= 4.
Scalar laplace(const Matrix<Scalar>& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Scalar sum = Scalar::zero(a(0, 0).prime());
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<Scalar> minor(n - 1, n - 1, sum);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != c) minor(i - 1, jj++) = a(i, j);
    const Scalar term = a(0, c) * laplace(minor);
    sum += (c % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(1);
  for (long p : {2L, 3L, 5L}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = random_matrix(rng, p, 1 + trial % 4, 40);
      CHECK((linalg::determinant(a) - laplace(a)).is_zero());
    }
  }
}

TEST_CASE("char poly matches det(tI - A) at sample points") {
  std::mt19937_64 rng(2);
  const long p = 3;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto a = random_matrix(rng, p, n, 40);
    const auto cp = linalg::char_poly(a);
    REQUIRE(cp.size() == n + 1);
    CHECK(cp.back().identical(Scalar::one(p)));
    for (long t : {0L, 1L, 7L, -4L}) {
      auto m = a;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? Scalar::exact(p, t) : Scalar::zero(p)) - a(i, j);
      Scalar value = Scalar::zero(p);
      for (std::size_t k = cp.size(); k-- > 0;) value = value * Scalar::exact(p, t) + cp[k];
      CHECK((value - laplace(m)).is_zero());
    }
  }
}

TEST_CASE("solve, inverse and kernel") {
  std::mt19937_64 rng(3);
  const long p = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, p, 3, 40);
    if (linalg::determinant(a).is_zero()) continue;
    const auto inv = linalg::inverse(a);
    const auto id = a * inv;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK((id(i, j) - (i == j ? Scalar::one(p) : Scalar::zero(p))).is_zero());
  }
  // rank 1 matrix: kernel 2, cokernel 2
  Matrix<Scalar> r(3, 3, Scalar::zero(p));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = Scalar::from_integer(p, static_cast<long>((i + 1) * (j + 2)), 40);
  const auto e = linalg::eliminate(r);
  CHECK(e.rank == 1);
  const auto ker = linalg::kernel_basis(e);
  CHECK(ker.size() == 2);
  for (const auto& x : ker)
    for (const auto& y : r * x) CHECK(y.is_zero());
  CHECK(linalg::cokernel_basis(e).size() == 2);
  CHECK_THROWS_AS(linalg::inverse(r), PrecisionError);
}

TEST_CASE("rank certification") {
  const long p = 3;
  Matrix<Scalar> a(2, 2, Scalar::zero(p));
  a(0, 0) = Scalar::one(p);
  a(1, 1) = Scalar::zero(p, 5);
  const auto e = linalg::eliminate(a);
  CHECK(e.rank == 1);
  CHECK_NOTHROW(linalg::certify_rank(e, mpq_class(5)));
  CHECK_THROWS_AS(linalg::certify_rank(e, mpq_class(10)), PrecisionError);
}
