#pragma once

#include "stabpair/weights/support.hpp"

#include <Eigen/Dense>

#include <variant>

namespace stabpair {

/// A nonzero vector in a polynomial or tensor representation of SL(N+1).
class RepVector {
 public:
  using Storage = std::variant<ExactPolynomial, FloatPolynomial, ExactTensor, FloatTensor>;

  RepVector(ExactPolynomial p);  // NOLINT
  RepVector(FloatPolynomial p);  // NOLINT
  RepVector(ExactTensor t);      // NOLINT
  RepVector(FloatTensor t);      // NOLINT

  const Storage& storage() const { return v_; }
  int group_size() const;
  bool is_exact() const { return std::holds_alternative<ExactPolynomial>(v_) || std::holds_alternative<ExactTensor>(v_); }
  bool is_polynomial() const {
    return std::holds_alternative<ExactPolynomial>(v_) || std::holds_alternative<FloatPolynomial>(v_);
  }
  /// Degree of the representation: polynomial degree, or the character total of a tensor.
  int rep_degree() const;

  /// Support with float coefficients below rel_tol * max treated as zero (exact data ignores rel_tol).
  std::set<WeightCharacter> support(double rel_tol = 1e-10) const;
  LatticePolytope polytope(double rel_tol = 1e-10) const;

  RepVector to_float() const;
  RepVector act(const FloatMatrix& sigma) const;
  /// Exact action; requires exact data.
  RepVector act_exact(const ExactMatrix& sigma) const;

  /// log of the squared norm of sigma . x (L2 with unit-volume FS measure, or Hermitian).
  double log_norm_sq(const FloatMatrix& sigma) const;
  /// m_ij = <rho(E_ij) u, u> / |u|^2 for u = sigma . x.
  Eigen::MatrixXcd moment(const FloatMatrix& sigma) const;

 private:
  Storage v_;
};

/// log of the unit-volume L2 weight of the monomial z^a on P^{M-1}: log(a! (M-1)! / (d+M-1)!).
double log_l2_monomial_weight(const Exponent& a);
/// log |P|^2_{L2}, computed in log-sum-exp form.
double log_l2_norm_sq(const FloatPolynomial& p);
Eigen::MatrixXcd l2_moment(const FloatPolynomial& p);
double log_hermitian_norm_sq(const std::vector<Complex>& dense);

}  // namespace stabpair
