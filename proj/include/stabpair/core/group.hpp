#pragma once

#include "stabpair/core/matrix.hpp"
#include "stabpair/core/polynomial.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace stabpair {

/// Element of SL(N+1) with cached determinant and Hilbert-Schmidt norm.
template <class K>
class GroupElement {
 public:
  using Traits = ScalarTraits<K>;

  explicit GroupElement(Matrix<K> m) : m_(std::move(m)) {
    require_dims(m_.rows() == m_.cols() && m_.rows() >= 2, "group element must be square of size >= 2");
    det_ = m_.determinant();
    if constexpr (Traits::exact) {
      require(det_ == Traits::one(), "exact group element must have determinant exactly 1");
    } else {
      require(std::abs(det_ - Complex(1.0, 0.0)) <= 1e-9, "float group element must have |det - 1| <= 1e-9");
    }
    hs_ = 0.0;
    for (const K& x : m_.data()) hs_ += std::norm(to_complex(x));
  }

  static GroupElement identity(int n) { return GroupElement(Matrix<K>::identity(n)); }

  const Matrix<K>& matrix() const { return m_; }
  int size() const { return m_.rows(); }
  const K& determinant() const { return det_; }
  /// Trace(sigma sigma^*).
  double hs_norm_sq() const { return hs_; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) { return GroupElement(a.m_ * b.m_); }

 private:
  Matrix<K> m_;
  K det_{};
  double hs_ = 0.0;
};

using ExactGroupElement = GroupElement<GaussianRational>;
using FloatGroupElement = GroupElement<Complex>;

inline FloatGroupElement to_float(const ExactGroupElement& g) { return FloatGroupElement(to_float(g.matrix())); }

/// Integer one-parameter subgroup t -> diag(t^{a_0}, ..., t^{a_N}) with sum a_i = 0.
class OnePSG {
 public:
  explicit OnePSG(std::vector<long> exponents);
  const std::vector<long>& exponents() const { return a_; }
  int size() const { return static_cast<int>(a_.size()); }
  long pairing(const std::vector<long>& character) const;
  /// lambda(t) as a float group element; exact when t is real and positive up to rounding.
  FloatMatrix at(double t) const;

 private:
  std::vector<long> a_;
};

/// Right substitution: (sigma . P)(A) = P(A sigma), so column c of A sigma is sum_j A_{rj} sigma_{jc}.
template <class K>
Polynomial<K> act(const Matrix<K>& sigma, const Polynomial<K>& p) {
  const VariableShape& sh = p.shape();
  require_dims(sigma.rows() == sh.cols && sigma.cols() == sh.cols, "group size does not match polynomial columns");
  const int nv = sh.variable_count();
  // images[v] = linear form substituted for variable v; powers cached lazily.
  std::vector<std::vector<Polynomial<K>>> powers(nv);
  for (int r = 0; r < sh.rows; ++r)
    for (int c = 0; c < sh.cols; ++c) {
      Polynomial<K> lin(sh, 1);
      for (int j = 0; j < sh.cols; ++j) {
        Exponent e(nv, 0);
        e[sh.index(r, j)] = 1;
        lin.add_term(e, sigma(j, c));
      }
      auto& pw = powers[sh.index(r, c)];
      pw.push_back(Polynomial<K>::constant(sh, ScalarTraits<K>::one()));
      pw.push_back(lin);
    }
  auto power = [&](int v, int k) -> const Polynomial<K>& {
    auto& pw = powers[v];
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * pw[1]);
    return pw[k];
  };
  Polynomial<K> out(sh, p.degree());
  for (const auto& [e, c] : p.terms()) {
    Polynomial<K> t = Polynomial<K>::constant(sh, c);
    for (int v = 0; v < nv; ++v)
      if (e[v]) t *= power(v, e[v]);
    out += t;
  }
  return out;
}

template <class K>
Polynomial<K> act(const GroupElement<K>& sigma, const Polynomial<K>& p) {
  return act(sigma.matrix(), p);
}

/// Divides by a principal n-th root of the determinant.
FloatMatrix normalize_determinant(const FloatMatrix& m);

/// i.i.d. standard complex normal entries, determinant-normalized.
FloatMatrix random_special_linear(int n, std::mt19937_64& rng);

/// Random Hermitian traceless matrix with standard normal entries.
Eigen::MatrixXcd random_traceless_hermitian(int n, std::mt19937_64& rng);

/// Projection onto traceless Hermitian matrices (Frobenius orthogonal).
Eigen::MatrixXcd traceless_hermitian_part(const Eigen::MatrixXcd& g);

/// Matrix exponential by scaling and squaring.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& h);

/// Random unitary from the QR factorization of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng);

/// Seed for chunk/stream i derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace stabpair
