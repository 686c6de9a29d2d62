#pragma once

#include "stabpair/core/polynomial.hpp"

#include <Eigen/Dense>

#include <memory>
#include <vector>

namespace stabpair {

/// A homogeneous form on k x (N+1) matrices (k = 1 for vectors), evaluated in log form.
class FormEvaluator {
 public:
  virtual ~FormEvaluator() = default;
  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual int degree() const = 0;
  /// log |P(a)|; -inf at zeros. When dlog is given it receives the holomorphic
  /// gradient divided by P, (dP/da_rc) / P(a), as a rows x cols matrix.
  virtual double log_abs(const Complex* a, Eigen::MatrixXcd* dlog = nullptr) const = 0;
};

/// Expanded polynomial with per-variable power tables.
class PolynomialEvaluator final : public FormEvaluator {
 public:
  explicit PolynomialEvaluator(const FloatPolynomial& p);
  int rows() const override { return shape_.rows; }
  int cols() const override { return shape_.cols; }
  int degree() const override { return degree_; }
  double log_abs(const Complex* a, Eigen::MatrixXcd* dlog = nullptr) const override;

 private:
  VariableShape shape_;
  int degree_;
  std::vector<Complex> coeffs_;
  std::vector<std::vector<int>> exps_;
};

/// scale * det(sum_rc a_rc C_rc) for constant square matrices C_rc.
class DeterminantalEvaluator final : public FormEvaluator {
 public:
  DeterminantalEvaluator(int rows, int cols, std::vector<Eigen::MatrixXcd> pencil, Complex scale);
  int rows() const override { return rows_; }
  int cols() const override { return cols_; }
  int degree() const override { return static_cast<int>(pencil_.front().rows()); }
  double log_abs(const Complex* a, Eigen::MatrixXcd* dlog = nullptr) const override;
  Complex scale() const { return scale_; }

 private:
  int rows_, cols_;
  std::vector<Eigen::MatrixXcd> pencil_;
  Complex scale_;
};

/// log(|P(a)|^2 / |a|^(2 deg)).
double log_fs_pointwise(const FormEvaluator& f, const Complex* a);

}  // namespace stabpair
