#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "senlab/error.hpp"

namespace senlab::linalg {

/// Dense row-major matrix over a ring whose elements carry their own
/// context (prime, field handle), so there is no default element: every
/// matrix is built from an explicit fill value.
template <class T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    require_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product: inner dimensions differ");
    Matrix c(a.rows_, b.cols_, zero_of(a, b));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero() && aik.is_exact()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  /// Matrix-vector product.
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& x) {
    if (a.cols_ != x.size()) throw UsageError("matrix-vector product: dimensions differ");
    std::vector<T> y;
    y.reserve(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T acc = a(i, 0) * x[0];
      for (std::size_t j = 1; j < a.cols_; ++j) acc += a(i, j) * x[j];
      y.push_back(std::move(acc));
    }
    return y;
  }

 private:
  void require_same_shape(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw UsageError("matrix shapes differ");
  }
  static T zero_of(const Matrix& a, const Matrix& b) {
    if (!a.data_.empty()) return zero_like(a.data_.front());
    return zero_like(b.data_.front());
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template <class T>
Matrix<T> power(const Matrix<T>& a, unsigned long n) {
  const T& any = a(0, 0);
  Matrix<T> result = Matrix<T>::identity(a.rows(), zero_like(any), one_like(any));
  Matrix<T> base = a;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// Kronecker product a (x) b.
template <class T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols(), zero_like(a(0, 0)));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return k;
}

/// Minimum valuation over the entries that are not zero to precision, or
/// nullopt for a matrix that is entirely zero to precision.
template <class T>
auto min_entry_valuation(const Matrix<T>& a) {
  using V = decltype(valuation_key(a(0, 0)));
  bool found = false;
  V best{};
  for (const auto& x : a.data()) {
    if (x.is_zero()) continue;
    V v = valuation_key(x);
    if (!found || v < best) best = v;
    found = true;
  }
  struct Result {
    bool nonzero;
    V value;
  };
  return Result{found, best};
}

/// Smallest valuation lower bound over all entries (zero entries contribute
/// their precision bound).
template <class T>
auto min_entry_bound(const Matrix<T>& a) {
  auto best = valuation_key(a(0, 0));
  for (const auto& x : a.data()) {
    auto v = valuation_key(x);
    if (v < best) best = v;
  }
  return best;
}

}  // namespace senlab::linalg
