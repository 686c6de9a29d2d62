#include "stabpair/energy/evaluator.hpp"

#include <cmath>
#include <limits>

namespace stabpair {

PolynomialEvaluator::PolynomialEvaluator(const FloatPolynomial& p) : shape_(p.shape()), degree_(p.degree()) {
  require_nonzero(p, "evaluator");
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c);
    exps_.push_back(e);
  }
}

double PolynomialEvaluator::log_abs(const Complex* a, Eigen::MatrixXcd* dlog) const {
  const int nv = shape_.variable_count();
  // powers[v][k] = a_v^k
  std::vector<Complex> powers(static_cast<std::size_t>(nv) * (degree_ + 1));
  for (int v = 0; v < nv; ++v) {
    Complex* pw = powers.data() + static_cast<std::size_t>(v) * (degree_ + 1);
    pw[0] = 1.0;
    for (int k = 1; k <= degree_; ++k) pw[k] = pw[k - 1] * a[v];
  }
  auto pw = [&](int v, int k) { return powers[static_cast<std::size_t>(v) * (degree_ + 1) + k]; };
  Complex value = 0.0;
  std::vector<Complex> grad(dlog ? nv : 0, Complex(0.0));
  std::vector<Complex> prefix(nv + 1), suffix(nv + 1);
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    const auto& e = exps_[t];
    if (!dlog) {
      Complex m = coeffs_[t];
      for (int v = 0; v < nv; ++v)
        if (e[v]) m *= pw(v, e[v]);
      value += m;
      continue;
    }
    prefix[0] = 1.0;
    for (int v = 0; v < nv; ++v) prefix[v + 1] = prefix[v] * pw(v, e[v]);
    suffix[nv] = 1.0;
    for (int v = nv - 1; v >= 0; --v) suffix[v] = suffix[v + 1] * pw(v, e[v]);
    value += coeffs_[t] * prefix[nv];
    for (int v = 0; v < nv; ++v)
      if (e[v]) grad[v] += coeffs_[t] * static_cast<double>(e[v]) * prefix[v] * pw(v, e[v] - 1) * suffix[v + 1];
  }
  const double mag = std::abs(value);
  if (dlog) {
    dlog->resize(shape_.rows, shape_.cols);
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) (*dlog)(r, c) = mag > 0 ? grad[shape_.index(r, c)] / value : Complex(0.0);
  }
  return mag > 0 ? std::log(mag) : -std::numeric_limits<double>::infinity();
}

DeterminantalEvaluator::DeterminantalEvaluator(int rows, int cols, std::vector<Eigen::MatrixXcd> pencil, Complex scale)
    : rows_(rows), cols_(cols), pencil_(std::move(pencil)), scale_(scale) {
  require_dims(static_cast<int>(pencil_.size()) == rows * cols, "pencil needs one matrix per variable");
  for (const auto& m : pencil_) require_dims(m.rows() == m.cols() && m.rows() == pencil_.front().rows(), "pencil shape");
  require(std::abs(scale) > 0, "zero scale");
}

double DeterminantalEvaluator::log_abs(const Complex* a, Eigen::MatrixXcd* dlog) const {
  const auto m = pencil_.front().rows();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(m, m);
  for (int v = 0; v < rows_ * cols_; ++v)
    if (a[v] != Complex(0.0)) mat += a[v] * pencil_[v];
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(mat);
  const Eigen::MatrixXcd& packed = lu.matrixLU();
  double log_det = std::log(std::abs(scale_));
  bool zero = false;
  for (int i = 0; i < m; ++i) {
    double x = std::abs(packed(i, i));
    if (x == 0.0) zero = true;
    log_det += std::log(x);
  }
  if (dlog) {
    dlog->setZero(rows_, cols_);
    if (!zero) {
      Eigen::MatrixXcd inv = lu.inverse();
      for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
          (*dlog)(r, c) = (inv.cwiseProduct(pencil_[r * cols_ + c].transpose())).sum();
    }
  }
  return zero ? -std::numeric_limits<double>::infinity() : log_det;
}

double log_fs_pointwise(const FormEvaluator& f, const Complex* a) {
  const int n = f.rows() * f.cols();
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) nrm += std::norm(a[i]);
  require(nrm > 0.0, "pointwise norm at the zero vector");
  return 2.0 * f.log_abs(a) - f.degree() * std::log(nrm);
}

}  // namespace stabpair
