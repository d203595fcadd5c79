#pragma once

#include <gmpxx.h>

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "senlab/error.hpp"
#include "senlab/linalg/matrix.hpp"

namespace senlab::linalg {

/// Result of Gauss-Jordan elimination with valuation pivoting.
///
/// `reduced` is the working matrix with rows and columns permuted so the
/// pivots sit on the leading diagonal: [D X; 0 Z] with D diagonal (pivots
/// not normalized) and Z zero to precision. Extra columns appended through
/// `augment` ride along untouched by column permutations.
template <class T>
struct Echelon {
  Matrix<T> reduced;
  std::size_t cols = 0;                 ///< columns eligible for pivots
  std::size_t rank = 0;
  std::vector<std::size_t> row_order;   ///< reduced row k is original row row_order[k]
  std::vector<std::size_t> col_order;   ///< reduced column k is original column col_order[k]
  int sign = 1;                         ///< parity of the permutations
  /// Smallest precision bound among residual entries (all zero to
  /// precision); nullopt when there is no residual block.
  std::optional<mpq_class> residual_bound;
  /// Smallest pivot valuation, nullopt when rank is 0.
  std::optional<mpq_class> min_pivot;
};

/// Full-pivoting elimination. Pivots are restricted to the first
/// `a.cols()` columns; `augment` (same row count) is carried along.
template <class T>
Echelon<T> eliminate(const Matrix<T>& a, const Matrix<T>* augment = nullptr) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t extra = augment ? augment->cols() : 0;
  if (augment && augment->rows() != m) throw UsageError("augmented block has the wrong row count");

  Matrix<T> w(m, n + extra, a(0, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    for (std::size_t j = 0; j < extra; ++j) w(i, n + j) = (*augment)(i, j);
  }
  Echelon<T> e{w, n, 0, {}, {}, 1, std::nullopt, std::nullopt};
  e.row_order.resize(m);
  e.col_order.resize(n);
  std::iota(e.row_order.begin(), e.row_order.end(), 0);
  std::iota(e.col_order.begin(), e.col_order.end(), 0);
  Matrix<T>& r = e.reduced;

  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    bool found = false;
    std::size_t pi = k, pj = k;
    mpq_class best;
    for (std::size_t i = k; i < m; ++i) {
      for (std::size_t j = k; j < n; ++j) {
        const T& x = r(i, j);
        if (x.is_zero()) continue;
        mpq_class v = valuation_key(x);
        if (!found || v < best) {
          found = true;
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (!found) break;
    if (pi != k) {
      for (std::size_t j = 0; j < n + extra; ++j) std::swap(r(k, j), r(pi, j));
      std::swap(e.row_order[k], e.row_order[pi]);
      e.sign = -e.sign;
    }
    if (pj != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(r(i, k), r(i, pj));
      std::swap(e.col_order[k], e.col_order[pj]);
      e.sign = -e.sign;
    }
    if (!e.min_pivot || best < *e.min_pivot) e.min_pivot = best;
    const T pivot = r(k, k);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == k || (r(i, k).is_zero() && r(i, k).is_exact())) continue;
      const T factor = r(i, k) / pivot;
      for (std::size_t j = k; j < n + extra; ++j) {
        if (j == k) {
          r(i, j) = zero_like(pivot);
          continue;
        }
        r(i, j) -= factor * r(k, j);
      }
    }
    e.rank = k + 1;
  }
  for (std::size_t i = e.rank; i < m; ++i) {
    for (std::size_t j = e.rank; j < n; ++j) {
      mpq_class v = valuation_key(r(i, j));
      if (!e.residual_bound || v < *e.residual_bound) e.residual_bound = v;
    }
  }
  return e;
}

/// Throws PrecisionError when residual entries are only known to be zero
/// below `floor`: the rank could then be larger than reported.
template <class T>
void certify_rank(const Echelon<T>& e, const mpq_class& floor) {
  if (e.residual_bound && *e.residual_bound < floor) {
    throw PrecisionError("rank not certifiable: an ambiguous pivot is only known to have valuation >= " +
                         e.residual_bound->get_str() + " (certification floor " + floor.get_str() +
                         "); raise the working precision");
  }
}

/// Basis of the right kernel {x : a x = 0}, one column vector per element.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Echelon<T>& e) {
  const auto& r = e.reduced;
  const std::size_t n = e.cols;
  const T zero = zero_like(r(0, 0));
  const T one = one_like(r(0, 0));
  std::vector<std::vector<T>> basis;
  for (std::size_t f = e.rank; f < n; ++f) {
    std::vector<T> permuted(n, zero);
    permuted[f] = one;
    for (std::size_t k = 0; k < e.rank; ++k) permuted[k] = -(r(k, f) / r(k, k));
    std::vector<T> x(n, zero);
    for (std::size_t k = 0; k < n; ++k) x[e.col_order[k]] = permuted[k];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Standard basis vectors spanning a complement of the column space: the
/// rows that never carried a pivot.
template <class T>
std::vector<std::vector<T>> cokernel_basis(const Echelon<T>& e) {
  const auto& r = e.reduced;
  const std::size_t m = r.rows();
  const T zero = zero_like(r(0, 0));
  const T one = one_like(r(0, 0));
  std::vector<std::vector<T>> basis;
  for (std::size_t k = e.rank; k < m; ++k) {
    std::vector<T> v(m, zero);
    v[e.row_order[k]] = one;
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves a x = b column by column for square invertible a.
template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.square()) throw UsageError("solve needs a square matrix");
  const auto e = eliminate(a, &b);
  if (e.rank < a.rows()) {
    throw PrecisionError("matrix is singular to working precision (rank " + std::to_string(e.rank) + " of " +
                         std::to_string(a.rows()) + ")");
  }
  const std::size_t n = a.rows();
  Matrix<T> x(n, b.cols(), zero_like(a(0, 0)));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.col_order[k], j) = e.reduced(k, n + j) / e.reduced(k, k);
  return x;
}

template <class T>
std::vector<T> solve(const Matrix<T>& a, const std::vector<T>& b) {
  Matrix<T> col(b.size(), 1, b.front());
  for (std::size_t i = 0; i < b.size(); ++i) col(i, 0) = b[i];
  const Matrix<T> x = solve(a, col);
  std::vector<T> out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(x(i, 0));
  return out;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows(), zero_like(a(0, 0)), one_like(a(0, 0))));
}

/// Determinant as the signed product of the pivots.
template <class T>
T determinant(const Matrix<T>& a) {
  if (!a.square()) throw UsageError("determinant needs a square matrix");
  const auto e = eliminate(a);
  if (e.rank < a.rows()) {
    // the residual block is zero to precision; so is the determinant
    T d = one_like(a(0, 0));
    for (std::size_t k = 0; k < e.rank; ++k) d *= e.reduced(k, k);
    for (std::size_t k = e.rank; k < a.rows(); ++k) d *= e.reduced(k, k);
    return d;
  }
  T d = one_like(a(0, 0));
  for (std::size_t k = 0; k < a.rows(); ++k) d *= e.reduced(k, k);
  return e.sign < 0 ? -d : d;
}

}  // namespace senlab::linalg
