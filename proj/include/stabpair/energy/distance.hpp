#pragma once

#include "stabpair/forms/x_pair.hpp"
#include "stabpair/pairs/kempf_ness.hpp"

#include <memory>
#include <vector>

namespace stabpair {

/// log ||sigma . P||_p^2 - log ||P||_p^2 on a fixed sample set (p finite, p = 0 Mahler).
class SampledLogNormTerm final : public LogNormTerm {
 public:
  SampledLogNormTerm(std::shared_ptr<const FormEvaluator> f, std::shared_ptr<const SampleSet> s, double index,
                     int threads = 1);
  int group_size() const override { return f_->cols(); }
  double log_norm_sq(const FloatMatrix& sigma) const override;
  Eigen::MatrixXcd moment(const FloatMatrix& sigma) const override;

 private:
  double raw(const FloatMatrix& sigma) const;
  std::shared_ptr<const FormEvaluator> f_;
  std::shared_ptr<const SampleSet> s_;
  double index_;
  int threads_;
  double offset_;
};

/// log ||sigma . P||_p - log ||P||_p with common random numbers.
struct LogNormShift {
  double value = 0.0;
  double stderr_value = 0.0;
};

LogNormShift log_norm_shift(const FormEvaluator& f, const SampleSet& s, const FloatMatrix& sigma, double index,
                            int threads = 1);

/// log tan dist_p and its square; the squared form is the one reported everywhere.
struct LogTanEstimate {
  double log_tan = 0.0;
  double log_tan_sq = 0.0;
  /// Standard error of log_tan_sq.
  double stderr_value = 0.0;
  double p = 0.0;
};

/// log ||sigma Delta^{degR}||_p - log ||sigma R^{degDelta}||_p, each side unit-normalized.
LogTanEstimate log_tan_dist_p(const FloatMatrix& sigma, const XPair& xp, double p);
/// log ||sigma w||_p - log ||sigma v||_p for polynomial data, each side unit-normalized.
LogTanEstimate log_tan_dist_p(const FloatMatrix& sigma, const Pair& pair, double p, const SamplingOptions& opts);

/// degR w_lambda(g Delta) - degDelta w_lambda(g R); positive means lambda destabilizes g . pair.
std::optional<long> x_pair_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const XPair& xp);

/// degR log||sigma Delta||^2_{p degR} - degDelta log||sigma R||^2_{p degDelta}.
KempfNessObjective x_pair_objective(const XPair& xp, double p);

StabilityCertificate orbit_distance(const XPair& xp, double p, const DescentOptions& opts);
StabilityCertificate orbit_distance(const Pair& pair, double p, const DescentOptions& opts,
                                    const SamplingOptions& sampling);

struct EnergyEstimate {
  double value = 0.0;
  double stderr_value = 0.0;
};

/// K-energy of the Bergman potential of sigma: log tan^2 at p = 0 divided by d^2 (n+1).
EnergyEstimate k_energy_algebraic(const FloatMatrix& sigma, const XPair& xp);
/// -(log||sigma R||_0 - log||R||_0) / degR.
EnergyEstimate aubin_f0_algebraic(const FloatMatrix& sigma, const XPair& xp);
/// (k^{-(2n+1)} / (n+1)) times the log tan^2 distance of the tensored pair
/// (I^q (x) R^{(km-1) degDelta}, Delta^{km degR}), q = degR degDelta, with |sigma|^2_HS for I.
EnergyEstimate coercivity_value(const FloatMatrix& sigma, const XPair& xp, int m, int k);

struct AsymptoticRow {
  int k = 0;
  int degree = 0;
  int ambient = 0;
  double inf_log_tan_sq = 0.0;
  double neg_inf = 0.0;
  double by_k_2n = 0.0;
  double by_k_2n1 = 0.0;
  double by_degree_2n = 0.0;
  double by_degree_2n1 = 0.0;
  std::string verdict;
};

/// Observational table of -inf log tan^2 dist_0 against k^{2n} and k^{2n+1}, and
/// against the same powers of the degree.
std::vector<AsymptoticRow> asymptotic_report(const std::vector<std::pair<int, XPair>>& family,
                                             const DescentOptions& opts);

/// Rational normal curves of degree k d for each k.
std::vector<std::pair<int, XPair>> rational_normal_family(int d, const std::vector<int>& ks,
                                                          const SamplingOptions& opts);

}  // namespace stabpair
