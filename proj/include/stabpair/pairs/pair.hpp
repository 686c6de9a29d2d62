#pragma once

#include "stabpair/pairs/rep_vector.hpp"

#include <functional>
#include <optional>
#include <string>

namespace stabpair {

enum class NormChoice { l2, hermitian };

/// (v, w) with v, w nonzero in representations of the same SL(N+1).
class Pair {
 public:
  Pair(RepVector v, RepVector w, std::string v_label = "v", std::string w_label = "w");

  const RepVector& v() const { return v_; }
  const RepVector& w() const { return w_; }
  int group_size() const { return v_.group_size(); }
  bool is_exact() const { return v_.is_exact() && w_.is_exact(); }
  /// L2 for polynomial data, Hermitian for tensors; reported per side.
  NormChoice v_norm() const { return v_.is_polynomial() ? NormChoice::l2 : NormChoice::hermitian; }
  NormChoice w_norm() const { return w_.is_polynomial() ? NormChoice::l2 : NormChoice::hermitian; }
  const std::string& v_label() const { return v_label_; }
  const std::string& w_label() const { return w_label_; }

  Pair act(const FloatMatrix& sigma) const { return Pair(v_.act(sigma), w_.act(sigma), v_label_, w_label_); }
  Pair act_exact(const ExactMatrix& sigma) const {
    return Pair(v_.act_exact(sigma), w_.act_exact(sigma), v_label_, w_label_);
  }

 private:
  RepVector v_, w_;
  std::string v_label_, w_label_;
};

/// Implicit (I^q (x) v^m, w^{m+1}); never expanded.
struct TensoredPair {
  Pair base;
  int m = 1;
  int q = 0;
};

struct TorusResult {
  bool semistable = true;
  /// w_lambda(w-side) > w_lambda(v-side) when !semistable.
  std::optional<OnePSG> witness;
};

/// Support tolerance for float data.
inline constexpr double kSupportTolerance = 1e-10;

TorusResult torus_semistable(const Pair& p);
TorusResult torus_semistable(const TensoredPair& p);

/// w_lambda(w) - w_lambda(v) for a pair; ((m+1) w_lambda(w)) - (q min lambda + m w_lambda(v)) for a tensored pair.
long witness_margin(const OnePSG& lambda, const Pair& p);
long witness_margin(const OnePSG& lambda, const TensoredPair& p);

TensoredPair build_stable_test_pair(const Pair& p, int m);

struct ProbeResult {
  bool passed = true;
  int trials_run = 0;
  /// 1-based index of the first failing trial.
  std::optional<int> failing_trial;
  std::optional<FloatMatrix> conjugator;
  /// "identity", "root-aligned" or "random".
  std::string conjugator_kind;
  /// Destabilizes (sigma v, sigma w) for the failing conjugator sigma.
  std::optional<OnePSG> witness;
};

/// Trial 1 uses the standard torus. For exact binary data the next trials
/// move each rational root of v or w to [0:1] by an integer SL(2) matrix; the
/// rest use i.i.d. standard complex normal conjugators, determinant-normalized.
ProbeResult randomized_torus_probe(const Pair& p, int trials, std::uint64_t seed);
ProbeResult randomized_torus_probe(const TensoredPair& p, int trials, std::uint64_t seed);

/// Integer SL(2) matrices whose second row is a rational root (p, q) of v or w.
std::vector<ExactMatrix> root_aligned_conjugators(const Pair& p);

}  // namespace stabpair
