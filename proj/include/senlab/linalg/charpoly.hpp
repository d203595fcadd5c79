#pragma once

#include <vector>

#include "senlab/error.hpp"
#include "senlab/linalg/matrix.hpp"

namespace senlab::linalg {

/// Characteristic polynomial det(t I - a), ascending coefficients, monic of
/// degree n. Berkowitz's recursion over leading principal blocks; no
/// divisions, so p-divisible entries cost no precision.
template <class T>
std::vector<T> char_poly(const Matrix<T>& a) {
  if (!a.square()) throw UsageError("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  const T zero = zero_like(a(0, 0));
  const T one = one_like(a(0, 0));
  std::vector<T> desc{one};  // descending, char poly of the leading k x k block
  for (std::size_t k = 0; k < n; ++k) {
    // column of the Toeplitz factor: 1, -a_kk, -R C, -R A C, ..., -R A^(k-1) C
    std::vector<T> col{one, -a(k, k)};
    std::vector<T> v(k, zero);
    for (std::size_t i = 0; i < k; ++i) v[i] = a(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      T dot = zero;
      for (std::size_t i = 0; i < k; ++i) dot += a(k, i) * v[i];
      col.push_back(-dot);
      if (j + 1 < k) {
        std::vector<T> next(k, zero);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) next[r] += a(r, c) * v[c];
        v = std::move(next);
      }
    }
    std::vector<T> out(k + 2, zero);
    for (std::size_t i = 0; i <= k + 1; ++i)
      for (std::size_t j = 0; j <= std::min(i, k); ++j) out[i] += col[i - j] * desc[j];
    desc = std::move(out);
  }
  return std::vector<T>(desc.rbegin(), desc.rend());
}

}  // namespace senlab::linalg
