#pragma once

#include "stabpair/core/group.hpp"
#include "stabpair/core/polynomial.hpp"

#include <random>
#include <vector>

namespace testing_support {

using namespace stabpair;

inline std::vector<Exponent> all_exponents(int nvars, int degree) {
  std::vector<Exponent> out;
  Exponent e(nvars, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == nvars - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

inline GaussianRational small_int(std::mt19937_64& rng, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> u(lo, hi);
  return GaussianRational(u(rng));
}

/// Dense random exact polynomial with small integer (optionally Gaussian) coefficients.
inline ExactPolynomial random_exact(VariableShape shape, int degree, std::mt19937_64& rng, bool gaussian = false) {
  ExactPolynomial p(shape, degree);
  std::uniform_int_distribution<int> u(-3, 3);
  for (const auto& e : all_exponents(shape.variable_count(), degree))
    p.add_term(e, GaussianRational(u(rng), gaussian ? u(rng) : 0));
  if (p.is_zero()) p.add_term(all_exponents(shape.variable_count(), degree).front(), GaussianRational(1));
  return p;
}

inline FloatPolynomial random_float(VariableShape shape, int degree, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FloatPolynomial p(shape, degree);
  for (const auto& e : all_exponents(shape.variable_count(), degree)) p.add_term(e, Complex(g(rng), g(rng)));
  return p;
}

/// Random element of SL(n, Z[i]) as a product of elementary matrices.
inline ExactMatrix random_exact_sl(int n, std::mt19937_64& rng, int factors = 4) {
  ExactMatrix m = ExactMatrix::identity(n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
  for (int f = 0; f < factors; ++f) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    ExactMatrix e = ExactMatrix::identity(n);
    e(i, j) = GaussianRational(coef(rng), coef(rng));
    m = m * e;
  }
  return m;
}

inline ExactMatrix exact_diag(const std::vector<GaussianRational>& d) { return ExactMatrix::diagonal(d); }

}  // namespace testing_support
