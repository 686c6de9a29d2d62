#pragma once

#include "stabpair/core/errors.hpp"
#include "stabpair/core/scalar.hpp"

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace stabpair {

/// Domain of a polynomial: a row vector of N+1 entries or a k x (N+1) matrix.
struct VariableShape {
  enum class Kind { vector, matrix };
  Kind kind = Kind::vector;
  int rows = 1;
  int cols = 2;

  static VariableShape vector(int n_plus_1) {
    require_dims(n_plus_1 >= 2, "vector shape needs N >= 1");
    return {Kind::vector, 1, n_plus_1};
  }
  static VariableShape matrix(int k, int n_plus_1) {
    require_dims(k >= 1 && n_plus_1 >= 2, "matrix shape needs k >= 1, N >= 1");
    return {Kind::matrix, k, n_plus_1};
  }

  int variable_count() const { return rows * cols; }
  int group_size() const { return cols; }
  int index(int r, int c) const { return r * cols + c; }
  friend bool operator==(const VariableShape& a, const VariableShape& b) {
    return a.kind == b.kind && a.rows == b.rows && a.cols == b.cols;
  }
  friend bool operator!=(const VariableShape& a, const VariableShape& b) { return !(a == b); }
};

using Exponent = std::vector<int>;

inline int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Sparse homogeneous polynomial. The zero polynomial keeps its declared degree
/// so it can take part in ring arithmetic; stability-facing types reject it.
template <class K>
class Polynomial {
 public:
  using Scalar = K;
  using Traits = ScalarTraits<K>;
  using TermMap = std::map<Exponent, K>;

  Polynomial() = default;
  Polynomial(VariableShape shape, int degree) : shape_(shape), degree_(degree) {
    require(degree >= 0, "negative degree");
  }
  Polynomial(VariableShape shape, int degree, const TermMap& terms) : Polynomial(shape, degree) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static Polynomial constant(VariableShape shape, const K& c) {
    Polynomial p(shape, 0);
    p.add_term(Exponent(shape.variable_count(), 0), c);
    return p;
  }
  static Polynomial variable(VariableShape shape, int index, const K& c = Traits::one()) {
    require_dims(index >= 0 && index < shape.variable_count(), "variable index out of range");
    Exponent e(shape.variable_count(), 0);
    e[index] = 1;
    Polynomial p(shape, 1);
    p.add_term(e, c);
    return p;
  }
  static Polynomial monomial(VariableShape shape, const Exponent& e, const K& c = Traits::one()) {
    Polynomial p(shape, exponent_degree(e));
    p.add_term(e, c);
    return p;
  }

  const VariableShape& shape() const { return shape_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const K& c) {
    require_dims(static_cast<int>(e.size()) == shape_.variable_count(), "exponent length does not match shape");
    for (int a : e) require(a >= 0, "negative exponent");
    require(exponent_degree(e) == degree_, "term degree differs from polynomial degree");
    if (Traits::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (Traits::is_zero(it->second)) terms_.erase(it);
    }
  }

  K coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Traits::zero() : it->second;
  }

  /// Column-degree vector of a monomial: its character under the diagonal torus.
  std::vector<long> column_degrees(const Exponent& e) const {
    std::vector<long> out(shape_.cols, 0);
    for (int r = 0; r < shape_.rows; ++r)
      for (int c = 0; c < shape_.cols; ++c) out[c] += e[shape_.index(r, c)];
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    absorb_degree(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    absorb_degree(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const K& s) {
    if (Traits::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const K& s) { return a *= s; }
  friend Polynomial operator*(const K& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_dims(a.shape_ == b.shape_, "shape mismatch in product");
    Polynomial r(a.shape_, a.degree_ + b.degree_);
    Exponent e(a.shape_.variable_count());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        auto it = r.terms_.find(e);
        if (it == r.terms_.end())
          r.terms_.emplace(e, ca * cb);
        else
          it->second += ca * cb;
      }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
      it = Traits::is_zero(it->second) ? r.terms_.erase(it) : std::next(it);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.shape_ != b.shape_) return false;
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int m) const {
    require(m >= 0, "negative power");
    Polynomial r = constant(shape_, Traits::one());
    Polynomial base = *this;
    while (m > 0) {
      if (m & 1) r *= base;
      m >>= 1;
      if (m) base *= base;
    }
    return r;
  }

  template <class V>
  V evaluate_as(const std::vector<V>& point) const {
    require_dims(static_cast<int>(point.size()) == shape_.variable_count(), "point does not match shape");
    // Power tables per variable keep the cost linear in the term count.
    std::vector<std::vector<V>> powers(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
      powers[i].push_back(V(1));
      for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * point[i]);
    }
    V sum(0);
    for (const auto& [e, c] : terms_) {
      V t = V(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= powers[i][e[i]];
      sum += t;
    }
    return sum;
  }

  K evaluate(const std::vector<K>& point) const { return evaluate_as<K>(point); }

 private:
  void absorb_degree(const Polynomial& o) {
    require_dims(shape_ == o.shape_, "shape mismatch in sum");
    if (o.is_zero()) return;
    if (is_zero())
      degree_ = o.degree_;
    else
      require(degree_ == o.degree_, "sum of polynomials of different degree");
  }

  VariableShape shape_{};
  int degree_ = 0;
  TermMap terms_;
};

using ExactPolynomial = Polynomial<GaussianRational>;
using FloatPolynomial = Polynomial<Complex>;

template <>
template <>
inline Complex ExactPolynomial::evaluate_as<Complex>(const std::vector<Complex>& point) const {
  require_dims(static_cast<int>(point.size()) == shape_.variable_count(), "point does not match shape");
  Complex sum{};
  for (const auto& [e, c] : terms_) {
    Complex t = c.to_complex();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

inline FloatPolynomial to_float(const ExactPolynomial& p) {
  FloatPolynomial r(p.shape(), p.degree());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_complex());
  return r;
}
inline const FloatPolynomial& to_float(const FloatPolynomial& p) { return p; }

/// Rejects the zero polynomial for stability-facing constructions.
template <class K>
void require_nonzero(const Polynomial<K>& p, const std::string& what) {
  if (p.is_zero()) throw PreconditionError(what + ": zero polynomial");
}

}  // namespace stabpair
