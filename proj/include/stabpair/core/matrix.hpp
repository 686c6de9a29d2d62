#pragma once

#include "stabpair/core/errors.hpp"
#include "stabpair/core/scalar.hpp"

#include <Eigen/Dense>

#include <vector>

namespace stabpair {

/// Small dense row-major matrix over an exact or floating scalar.
template <class K>
class Matrix {
 public:
  using Traits = ScalarTraits<K>;

  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, Traits::zero()) {
    require_dims(rows >= 0 && cols >= 0, "negative matrix size");
  }
  Matrix(int rows, int cols, std::vector<K> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_dims(static_cast<int>(data_.size()) == rows * cols, "matrix entry count mismatch");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Traits::one();
    return m;
  }
  static Matrix diagonal(const std::vector<K>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  K& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const K& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const std::vector<K>& data() const { return data_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require_dims(a.cols_ == b.rows_, "matrix product size mismatch");
    Matrix r(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (Traits::is_zero(a(i, k))) continue;
        for (int j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix adjoint() const {
    Matrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = Traits::conj((*this)(i, j));
    return r;
  }

  /// Determinant by Gaussian elimination over the field K.
  K determinant() const {
    require_dims(rows_ == cols_, "determinant of non-square matrix");
    Matrix a = *this;
    K det = Traits::one();
    for (int k = 0; k < rows_; ++k) {
      int piv = -1;
      if constexpr (Traits::exact) {
        for (int i = k; i < rows_; ++i)
          if (!Traits::is_zero(a(i, k))) {
            piv = i;
            break;
          }
      } else {
        double best = 0.0;
        for (int i = k; i < rows_; ++i)
          if (std::abs(a(i, k)) > best) {
            best = std::abs(a(i, k));
            piv = i;
          }
      }
      if (piv < 0) return Traits::zero();
      if (piv != k) {
        for (int j = 0; j < cols_; ++j) std::swap(a(k, j), a(piv, j));
        det = -det;
      }
      det *= a(k, k);
      for (int i = k + 1; i < rows_; ++i) {
        if (Traits::is_zero(a(i, k))) continue;
        K f = a(i, k) / a(k, k);
        for (int j = k; j < cols_; ++j) a(i, j) -= f * a(k, j);
      }
    }
    return det;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<K> data_;
};

using ExactMatrix = Matrix<GaussianRational>;
using FloatMatrix = Matrix<Complex>;

inline Eigen::MatrixXcd to_eigen(const FloatMatrix& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline FloatMatrix from_eigen(const Eigen::MatrixXcd& m) {
  FloatMatrix r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline FloatMatrix to_float(const ExactMatrix& m) {
  FloatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
  return r;
}
inline const FloatMatrix& to_float(const FloatMatrix& m) { return m; }

}  // namespace stabpair
