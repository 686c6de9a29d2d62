#pragma once

#include "stabpair/core/matrix.hpp"
#include "stabpair/energy/evaluator.hpp"
#include "stabpair/energy/sampling.hpp"

#include <limits>
#include <vector>

namespace stabpair {

inline constexpr double kInfinityIndex = std::numeric_limits<double>::infinity();

/// log ||P||_p with its standard error; p = 0 is the Mahler measure.
struct MahlerEstimate {
  double log_value = 0.0;
  double stderr_value = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
};

struct SamplingOptions {
  int samples = 200000;
  std::uint64_t seed = 0;
  int threads = 1;
};

/// |P(z)|^2 / |z|^(2d).
double fs_pointwise(const FloatPolynomial& p, const std::vector<Complex>& z);

/// log(|P(a sigma)|^2) at every sample a (unit vectors), i.e. the pointwise
/// squared FS norm of sigma . P in log form. sigma = nullptr means the identity.
std::vector<double> pointwise_log_sq(const FormEvaluator& f, const SampleSet& s, const FloatMatrix* sigma, int threads);

/// Estimate of log ||.||_p from pointwise log squared norms; p in [0, inf).
MahlerEstimate estimate_from_logs(const std::vector<double>& log_sq, double p, std::uint64_t seed);

MahlerEstimate lp_norm(const FloatPolynomial& p, double index, const SamplingOptions& opts);
MahlerEstimate lp_norm(const FormEvaluator& f, double index, const SampleSet& s, const FloatMatrix* sigma = nullptr,
                       int threads = 1);

struct SupNormOptions {
  int samples = 4000;
  int starts = 8;
  int max_iters = 5000;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
};

/// Lower bound for log ||P||_inf from sampling plus projected ascent on the sphere.
struct SupNormReport {
  double log_value = 0.0;
  /// Norm of the tangential gradient of log |P|^2_FS at the best point.
  double stationarity = 0.0;
  bool converged = false;
  int starts = 0;
  std::vector<Complex> argmax;
};

SupNormReport sup_norm(const FloatPolynomial& p, const SupNormOptions& opts);

double harmonic_number(int n);

struct ArestovReport {
  int n = 0;
  int degree = 0;
  MahlerEstimate mahler;
  SupNormReport sup;
  /// -(d/2) H_N + log ||P||_inf
  double lower_bound = 0.0;
  double slack = 0.0;
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  bool lower_ok = false;
  bool upper_ok = false;
};

/// -(d/2) H_N + log||P||_inf <= log||P||_0 <= log||P||_inf with 3 stderr slack.
ArestovReport arestov_check(const FloatPolynomial& p, const SamplingOptions& opts, const SupNormOptions& sup = {});

struct JensenReport {
  MahlerEstimate mahler;
  MahlerEstimate lp;
  double margin = 0.0;
  double slack = 0.0;
  bool ok = false;
};

/// log||P||_0 <= log||P||_p with 3 stderr slack, on shared samples.
JensenReport jensen_check(const FloatPolynomial& p, double index, const SamplingOptions& opts);

struct ThetaEstimate {
  double theta = 0.0;
  double stderr_value = 0.0;
  MahlerEstimate mahler;
  MahlerEstimate l2;
};

/// 2 log||S||_0 - 2 log||S||_2.
ThetaEstimate conformal_theta(const FloatPolynomial& s, const SamplingOptions& opts);

}  // namespace stabpair
