#include "stabpair/core/group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace stabpair {

OnePSG::OnePSG(std::vector<long> exponents) : a_(std::move(exponents)) {
  require_dims(a_.size() >= 2, "one-parameter subgroup needs N >= 1");
  long s = 0;
  bool nonzero = false;
  for (long x : a_) {
    s += x;
    nonzero = nonzero || x != 0;
  }
  require(s == 0, "one-parameter subgroup exponents must sum to zero");
  require(nonzero, "one-parameter subgroup must be nontrivial");
}

long OnePSG::pairing(const std::vector<long>& character) const {
  require_dims(character.size() == a_.size(), "character length does not match subgroup");
  long s = 0;
  for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * character[i];
  return s;
}

FloatMatrix OnePSG::at(double t) const {
  std::vector<Complex> d;
  for (long x : a_) d.emplace_back(std::pow(t, static_cast<double>(x)), 0.0);
  return FloatMatrix::diagonal(d);
}

FloatMatrix normalize_determinant(const FloatMatrix& m) {
  Complex det = m.determinant();
  require(std::abs(det) > 0.0, "singular matrix cannot be normalized into SL");
  Complex root = std::pow(det, 1.0 / m.rows());
  std::vector<Complex> data = m.data();
  for (auto& x : data) x /= root;
  return FloatMatrix(m.rows(), m.cols(), data);
}

FloatMatrix random_special_linear(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  FloatMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
  return normalize_determinant(m);
}

Eigen::MatrixXcd random_traceless_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  return traceless_hermitian_part(g);
}

Eigen::MatrixXcd traceless_hermitian_part(const Eigen::MatrixXcd& g) {
  Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  Complex tr = h.trace() / static_cast<double>(h.rows());
  for (int i = 0; i < h.rows(); ++i) h(i, i) -= tr;
  return h;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& h) { return h.exp(); }

Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  // Land in SU(n) so the result is a valid group element.
  Complex det = q.determinant();
  q.col(0) /= det;
  return q;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace stabpair
