#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "senlab/field/field.hpp"
#include "senlab/linalg/matrix.hpp"
#include "senlab/padic/scalar.hpp"

namespace senlab::gamma {

using field::Field;
using padic::Scalar;
using QMatrix = linalg::Matrix<Scalar>;

/// K_m = Q_p(zeta_(p^m)) presented by E(u) = Phi_(p^m)(1 + u), with the
/// automorphism sigma_a: zeta -> zeta^a and cyclotomic character chi = a.
struct CyclotomicLevel {
  long p = 0;
  long m = 0;
  long a = 0;
  long precision = 0;
  Field field;
  /// Matrix of sigma_a on the Q_p basis of K_m.
  QMatrix sigma;
  Scalar chi;
};

/// Q_p(zeta_(p^m)) itself.
Field cyclotomic_field(long p, long m, long prec);

CyclotomicLevel build_level(long p, long m, long a, long prec = padic::kDefaultPrecision);

/// -(minimum entry valuation): the sup-norm of the matrix is p^exponent.
/// nullopt for a matrix that is zero to precision.
std::optional<long> norm_exponent(const QMatrix& a);

/// chi^n sigma - 1 on K_m.
QMatrix diagonal_block(const CyclotomicLevel& level, long n);

struct RhoReport {
  std::vector<std::pair<long, long>> per_n;  ///< (n, norm exponent of rho_n)
  long delta = 0;
};

/// Inverts chi^n sigma - 1 for each n != 0 in range and reports the norm
/// exponents of the inverses.
RhoReport rho_bound(const CyclotomicLevel& level, long n_min, long n_max);
RhoReport rho_bound(const CyclotomicLevel& level, const std::vector<long>& ns);

/// g - 1 on D_N = sum_(n=1..N) K_m a^n/n! as a Q_p matrix, with its
/// block-diagonal inverse rho and rho M (M the strict upper part).
struct TwistedOperator {
  CyclotomicLevel level;
  Scalar e;
  long trunc = 0;
  Scalar y;
  QMatrix matrix;
  QMatrix rho;
  QMatrix rho_m;
  std::size_t block = 0;
};

TwistedOperator g_minus_one(const CyclotomicLevel& level, const Scalar& e, long trunc);

/// Q_p coordinates of (g - 1) x.
std::vector<Scalar> apply_g_minus_one(const TwistedOperator& t, const std::vector<Scalar>& x);

struct NeumannResult {
  std::vector<Scalar> solution;
  /// Valuation of (g - 1) x - rhs (a lower bound when it is zero).
  long residual_valuation = 0;
  long terms = 0;
  /// Norm exponent of rho M (nullopt when rho M vanishes).
  std::optional<long> norm_exponent;
};

/// x = sum_k (-rho M)^k rho rhs. Requires |rho M| < 1 unless
/// `allow_nilpotent`, in which case the finite sum (rho M is strictly block
/// upper triangular) is used whatever its norm.
NeumannResult neumann_invert(const TwistedOperator& t, const std::vector<Scalar>& rhs, bool allow_nilpotent = false);

/// Solution of (g - 1) x = rhs by dense elimination.
std::vector<Scalar> dense_solve(const TwistedOperator& t, const std::vector<Scalar>& rhs);

/// Dimension of ker(g - 1) on D_N.
long kernel_check(const TwistedOperator& t);

}  // namespace senlab::gamma
