#pragma once
// Small dense matrices over a generic scalar, with an elimination-based
// nullspace that is exact for rationals and pivoted for floating types.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "framedrep/errors.hpp"
#include "framedrep/scalar.hpp"

namespace framedrep {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, from_ratio<T>(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_ratio<T>(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  // this += s * o
  void add_scaled(const T& s, const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * o.data_[k];
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("dense matrix product dimension mismatch");
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  DenseMatrix column_block(std::size_t col0, std::size_t count) const {
    DenseMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, col0 + j);
    return out;
  }

  // Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, ScalarTraits<T>::magnitude(x));
    return m;
  }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("dense matrix shape mismatch");
  }
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct EliminationResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Reduced row echelon form in place. For floating scalars, pivots below
// tol * max|entry| are treated as zero; tol is ignored for exact scalars.
template <class T>
EliminationResult row_reduce(DenseMatrix<T>& m, double tol = 1e-10) {
  EliminationResult res;
  const double scale = std::max(m.max_abs(), 1e-300);
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const double mag = ScalarTraits<T>::magnitude(m(i, col));
      if constexpr (ScalarTraits<T>::exact) {
        best = i;
        break;
      } else {
        if (mag > best_mag) {
          best_mag = mag;
          best = i;
        }
      }
    }
    if (best == m.rows()) continue;
    if constexpr (!ScalarTraits<T>::exact) {
      if (best_mag <= tol * scale) continue;
    }
    if (best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
    const T inv = from_ratio<T>(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    res.pivot_columns.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

template <class T>
std::size_t rank(DenseMatrix<T> m, double tol = 1e-10) {
  return row_reduce(m, tol).rank;
}

// Columns form a basis of {x : m x = 0}, one per free variable.
template <class T>
DenseMatrix<T> nullspace(DenseMatrix<T> m, double tol = 1e-10) {
  const auto res = row_reduce(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivot_columns) is_pivot[c] = true;
  DenseMatrix<T> basis(m.cols(), m.cols() - res.rank);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = from_ratio<T>(1);
    for (std::size_t r = 0; r < res.rank; ++r) basis(res.pivot_columns[r], k) = -m(r, free);
    ++k;
  }
  return basis;
}

// Gauss-Jordan inverse; throws on a (numerically) singular matrix.
template <class T>
DenseMatrix<T> inverse(const DenseMatrix<T>& m, double tol = 1e-13) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = from_ratio<T>(1);
  }
  const auto res = row_reduce(aug, tol);
  if (res.rank < n || res.pivot_columns.back() >= n) throw DomainError("matrix is singular");
  return aug.column_block(n, n);
}

template <class T>
T determinant(DenseMatrix<T> m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  T det = from_ratio<T>(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    double best = 0.0;
    for (std::size_t i = col; i < n; ++i) {
      const double mag = ScalarTraits<T>::magnitude(m(i, col));
      if (!is_zero(m(i, col)) && (piv == n || mag > best)) {
        piv = i;
        best = mag;
        if constexpr (ScalarTraits<T>::exact) break;
      }
    }
    if (piv == n) return from_ratio<T>(0);
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      det = -det;
    }
    det *= m(col, col);
    const T inv = from_ratio<T>(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const T f = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

}  // namespace framedrep
