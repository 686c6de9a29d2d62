#pragma once

#include "stabpair/core/elimination.hpp"
#include "stabpair/core/matrix.hpp"
#include "stabpair/core/polynomial.hpp"
#include "stabpair/energy/evaluator.hpp"

#include <array>
#include <memory>
#include <vector>

namespace stabpair {

/// Largest degree and ambient dimension for which Chow and Hurwitz forms are expanded.
inline constexpr int kSymbolicDegreeCap = 5;
inline constexpr int kSymbolicAmbientCap = 5;

/// Parametrized rational curve [gamma_0(s,t) : ... : gamma_N(s,t)], all of degree d.
class RationalCurve {
 public:
  explicit RationalCurve(std::vector<ExactPolynomial> gamma);

  /// (s^d, s^{d-1} t, ..., t^d)
  static RationalCurve rational_normal(int d);

  int ambient() const { return static_cast<int>(gamma_.size()) - 1; }
  int degree() const { return degree_; }
  const std::vector<ExactPolynomial>& gamma() const { return gamma_; }
  const std::vector<BinaryForm<GaussianRational>>& binary() const { return binary_; }

  /// Curve with components sum_j sigma_ij gamma_j: the image of the curve under sigma.
  RationalCurve transformed(const ExactMatrix& sigma) const;

  /// gamma and its first two z-derivatives in the affine chart (z, 1), or (1, z) when swap is set.
  std::array<std::vector<Complex>, 3> chart_jet(Complex z, bool swap) const;

  bool within_symbolic_cap() const { return degree_ <= kSymbolicDegreeCap && ambient() <= kSymbolicAmbientCap; }

 private:
  std::vector<ExactPolynomial> gamma_;
  std::vector<BinaryForm<GaussianRational>> binary_;
  std::vector<std::vector<Complex>> float_coeffs_;
  int degree_ = 0;
};

/// Zero set of an exact form F in n+2 variables, F assumed irreducible.
struct HypersurfaceVariety {
  int n = 0;
  ExactPolynomial F;
  HypersurfaceVariety(int dim, ExactPolynomial form);
};

/// Res_{s,t}(A_0 . gamma, A_1 . gamma) on 2 x (N+1) matrices, unnormalized.
ExactPolynomial chow_form_curve(const RationalCurve& c);
/// Res(g_s, g_t) / d^{d-2} for g = B . gamma, on row vectors B, unnormalized.
ExactPolynomial hurwitz_form_curve(const RationalCurve& c);
/// F(Lambda(A)) with Lambda the signed maximal minors, on (n+1) x (n+2) matrices.
ExactPolynomial chow_form_hypersurface(const HypersurfaceVariety& h);

/// Numeric values, available beyond the symbolic cap.
GaussianRational chow_form_curve_at(const RationalCurve& c, const ExactMatrix& a);
GaussianRational hurwitz_form_curve_at(const RationalCurve& c, const std::vector<GaussianRational>& b);

struct NormalizedForm {
  ExactPolynomial form;
  /// form = factor * input
  GaussianRational factor;
};

/// Clears denominators and integer content and makes the first coefficient in
/// ascending exponent order a positive rational.
NormalizedForm normalize_form(const ExactPolynomial& p);

/// Sylvester pencil for the Chow form: det(sum a_rc C_rc) = raw Chow form.
std::vector<Eigen::MatrixXcd> chow_pencil(const RationalCurve& c);
/// Pencil of Sylvester(g_s, g_t); det = d^{d-2} * raw Hurwitz form.
std::vector<Eigen::MatrixXcd> hurwitz_pencil(const RationalCurve& c);

}  // namespace stabpair
