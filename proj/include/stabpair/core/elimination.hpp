#pragma once

#include "stabpair/core/polynomial.hpp"

#include <utility>
#include <vector>

namespace stabpair {

/// Exact quotient num / den; throws if den does not divide num.
template <class K>
Polynomial<K> divide_exact(const Polynomial<K>& num, const Polynomial<K>& den) {
  static_assert(ScalarTraits<K>::exact, "exact division needs exact scalars");
  require(!den.is_zero(), "division by zero polynomial");
  require_dims(num.shape() == den.shape(), "shape mismatch in division");
  if (num.is_zero()) return Polynomial<K>(num.shape(), std::max(0, num.degree() - den.degree()));
  require(num.degree() >= den.degree(), "division degree underflow");
  const auto& [ed, cd] = *den.terms().rbegin();
  Polynomial<K> quot(num.shape(), num.degree() - den.degree());
  Polynomial<K> rem = num;
  Exponent e(ed.size());
  while (!rem.is_zero()) {
    const auto& [er, cr] = *rem.terms().rbegin();
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = er[i] - ed[i];
      if (e[i] < 0) throw PreconditionError("polynomial division is not exact");
    }
    K q = cr / cd;
    quot.add_term(e, q);
    Polynomial<K> step(num.shape(), num.degree());
    Exponent s(e.size());
    for (const auto& [eb, cb] : den.terms()) {
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = eb[i] + e[i];
      step.add_term(s, cb * q);
    }
    rem -= step;
  }
  return quot;
}

/// Ring glue so elimination runs over scalars and over polynomial rings alike.
template <class R>
struct RingOps {
  static R zero_like(const R&) { return ScalarTraits<R>::zero(); }
  static bool is_zero(const R& x) { return ScalarTraits<R>::is_zero(x); }
  static R div(const R& a, const R& b) { return a / b; }
  static R times(const R& a, long n) { return a * R(n); }
  static R div_int(const R& a, long n) { return a / R(n); }
};

template <class K>
struct RingOps<Polynomial<K>> {
  static Polynomial<K> zero_like(const Polynomial<K>& p) { return Polynomial<K>(p.shape(), 0); }
  static bool is_zero(const Polynomial<K>& x) { return x.is_zero(); }
  static Polynomial<K> div(const Polynomial<K>& a, const Polynomial<K>& b) { return divide_exact(a, b); }
  static Polynomial<K> times(const Polynomial<K>& a, long n) { return a * K(n); }
  static Polynomial<K> div_int(const Polynomial<K>& a, long n) { return a * (K(1) / K(n)); }
};

template <class R>
using RingMatrix = std::vector<std::vector<R>>;

/// Fraction-free (Bareiss) determinant with row pivoting on zero pivots.
template <class R>
R determinant_bareiss(RingMatrix<R> m) {
  const std::size_t n = m.size();
  require_dims(n >= 1, "empty determinant");
  for (const auto& row : m) require_dims(row.size() == n, "determinant of non-square matrix");
  using Ops = RingOps<R>;
  bool negate = false;
  R prev{};
  bool have_prev = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (Ops::is_zero(m[k][k])) {
      std::size_t piv = k + 1;
      while (piv < n && Ops::is_zero(m[piv][k])) ++piv;
      if (piv == n) return Ops::zero_like(m[0][0]);
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        R v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = have_prev ? Ops::div(v, prev) : v;
      }
    prev = m[k][k];
    have_prev = true;
  }
  R det = m[n - 1][n - 1];
  return negate ? R(-det) : det;
}

/// Binary form sum_k c[k] s^{d-k} t^k with coefficients in a ring.
template <class R>
struct BinaryForm {
  std::vector<R> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const {
    for (const auto& c : coeffs)
      if (!RingOps<R>::is_zero(c)) return false;
    return true;
  }
};

template <class R>
RingMatrix<R> sylvester_matrix(const BinaryForm<R>& f, const BinaryForm<R>& g) {
  const int p = f.degree(), q = g.degree();
  require(p >= 0 && q >= 0 && p + q >= 1, "Sylvester matrix needs positive total degree");
  R zero = RingOps<R>::zero_like(f.coeffs[0]);
  RingMatrix<R> m(p + q, std::vector<R>(p + q, zero));
  for (int i = 0; i < q; ++i)
    for (int k = 0; k <= p; ++k) m[i][i + k] = f.coeffs[k];
  for (int i = 0; i < p; ++i)
    for (int k = 0; k <= q; ++k) m[q + i][i + k] = g.coeffs[k];
  return m;
}

template <class R>
R sylvester_resultant(const BinaryForm<R>& f, const BinaryForm<R>& g) {
  require(!f.is_zero() && !g.is_zero(), "resultant of a zero form");
  return determinant_bareiss(sylvester_matrix(f, g));
}

template <class R>
BinaryForm<R> partial_s(const BinaryForm<R>& f) {
  const int d = f.degree();
  BinaryForm<R> out;
  for (int k = 0; k < d; ++k) out.coeffs.push_back(RingOps<R>::times(f.coeffs[k], d - k));
  return out;
}

template <class R>
BinaryForm<R> partial_t(const BinaryForm<R>& f) {
  const int d = f.degree();
  BinaryForm<R> out;
  for (int k = 1; k <= d; ++k) out.coeffs.push_back(RingOps<R>::times(f.coeffs[k], k));
  return out;
}

/// Discriminant divisor d^{d-2} applied to Res(f_s, f_t).
inline long discriminant_divisor(int d) {
  long r = 1;
  for (int i = 0; i < d - 2; ++i) r *= d;
  return r;
}

/// Res(df/ds, df/dt) / d^{d-2}.
template <class R>
R binary_discriminant(const BinaryForm<R>& f) {
  require(f.degree() >= 2, "discriminant needs degree >= 2");
  require(!f.is_zero(), "discriminant of a zero form");
  R res = determinant_bareiss(sylvester_matrix(partial_s(f), partial_t(f)));
  return RingOps<R>::div_int(res, discriminant_divisor(f.degree()));
}

template <class K>
BinaryForm<K> binary_form_of(const Polynomial<K>& p) {
  require_dims(p.shape() == VariableShape::vector(2), "binary form needs a vector shape with two variables");
  const int d = p.degree();
  BinaryForm<K> f;
  for (int k = 0; k <= d; ++k) f.coeffs.push_back(p.coefficient({d - k, k}));
  return f;
}

template <class K>
Polynomial<K> polynomial_of(const BinaryForm<K>& f) {
  const int d = f.degree();
  Polynomial<K> p(VariableShape::vector(2), d);
  for (int k = 0; k <= d; ++k) p.add_term({d - k, k}, f.coeffs[k]);
  return p;
}

/// Signed maximal minors: Lambda_j = (-1)^j det(A without column j).
template <class R>
std::vector<R> maximal_minors(const RingMatrix<R>& a) {
  require_dims(!a.empty(), "maximal minors of empty matrix");
  const std::size_t rows = a.size(), cols = a[0].size();
  for (const auto& r : a) require_dims(r.size() == cols, "ragged matrix");
  require_dims(cols == rows + 1, "maximal minors need cols = rows + 1");
  std::vector<R> out;
  for (std::size_t j = 0; j < cols; ++j) {
    RingMatrix<R> sub(rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t c = 0; c < cols; ++c)
        if (c != j) sub[i].push_back(a[i][c]);
    R d = determinant_bareiss(sub);
    out.push_back(j % 2 ? R(-d) : d);
  }
  return out;
}

/// Distinct projective roots [p:q] with integer p, q of a binary form with rational
/// real coefficients. Forms with non-real coefficients return no roots.
std::vector<std::pair<mpz_class, mpz_class>> rational_roots(const BinaryForm<GaussianRational>& f);

}  // namespace stabpair
