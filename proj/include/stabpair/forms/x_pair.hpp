#pragma once

#include "stabpair/energy/lp_norm.hpp"
#include "stabpair/forms/forms.hpp"

#include <memory>
#include <optional>
#include <string>

namespace stabpair {

/// The pair (R^{degDelta}, Delta^{degR}) of a variety, kept in log form: the powers
/// are bookkeeping only and never expanded.
struct XPair {
  int n = 1;
  int ambient = 0;
  int degree = 0;
  /// Normalized expanded forms; empty beyond the symbolic cap.
  std::optional<ExactPolynomial> r_form;
  std::optional<ExactPolynomial> delta_form;
  int deg_r = 0;
  int deg_delta = 0;
  std::shared_ptr<const FormEvaluator> r_eval;
  std::shared_ptr<const FormEvaluator> delta_eval;
  /// Fixed samples shared by every norm of this pair, so estimates at sigma and at I
  /// use common random numbers.
  std::shared_ptr<const SampleSet> r_samples;
  std::shared_ptr<const SampleSet> delta_samples;
  MahlerEstimate mahler_r;
  MahlerEstimate mahler_delta;
  SamplingOptions sampling;
  bool hypersurface = false;
  std::string note;

  bool has_delta() const { return delta_eval != nullptr; }
  int r_power() const { return deg_delta; }
  int delta_power() const { return deg_r; }
  void require_delta() const;
};

XPair build_x_pair(const RationalCurve& c, const SamplingOptions& opts);
XPair build_x_pair(const HypersurfaceVariety& h, const SamplingOptions& opts);

}  // namespace stabpair
