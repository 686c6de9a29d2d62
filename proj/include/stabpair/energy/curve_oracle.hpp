#pragma once

#include "stabpair/core/matrix.hpp"
#include "stabpair/forms/forms.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace stabpair {

struct OracleOptions {
  /// Starting polar grid per chart; doubled until successive levels agree.
  int radial = 24;
  int angular = 48;
  int max_levels = 4;
  int time_nodes = 33;
  double tolerance = 1e-3;
  /// Step of the fourth-order Laplacian stencil.
  double fd_step = 2e-3;
  int threads = 1;
};

/// Quadrature over P^1 of the metric pulled back through sigma . gamma, with
/// omega = (1/pi) g dA in each chart, potentials phi_sigma = log(|sigma y|^2 / |y|^2).
struct CurveGeometryReport {
  double volume = 0.0;
  double mu = 0.0;
  double k_energy = 0.0;
  double aubin_f0 = 0.0;
  double aubin_j = 0.0;
  /// (1/V) int phi omega
  double phi_mean = 0.0;
  int radial = 0;
  int angular = 0;
  int levels = 0;
  /// Largest change between the last two levels.
  double last_change = 0.0;
  bool converged = false;
};

CurveGeometryReport curve_geometry_oracle(const FloatMatrix& sigma, const RationalCurve& c,
                                          const OracleOptions& opts = {});

/// Scalar curvature at chart point z of the metric pulled back through m . gamma:
/// -Laplacian(log g) / (4 g) by fourth-order differences.
double scalar_curvature_fd(const Eigen::MatrixXcd& m, const RationalCurve& c, Complex z, bool swap, double h);
/// Same from Gram determinants of the 2-jet: 2 - G0^3 G2 / G1^3.
double scalar_curvature_jet(const Eigen::MatrixXcd& m, const RationalCurve& c, Complex z, bool swap);

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace stabpair
