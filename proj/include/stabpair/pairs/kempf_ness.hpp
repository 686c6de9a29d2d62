#pragma once

#include "stabpair/pairs/pair.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stabpair {

/// sigma -> log |sigma . x|^2 for some unitarily invariant norm, with its moment.
class LogNormTerm {
 public:
  virtual ~LogNormTerm() = default;
  virtual int group_size() const = 0;
  virtual double log_norm_sq(const FloatMatrix& sigma) const = 0;
  /// m_ij with d/de log|exp(eH) sigma . x|^2 = 2 Re sum_ij H_ij m_ij.
  virtual Eigen::MatrixXcd moment(const FloatMatrix& sigma) const = 0;
};

class RepVectorTerm final : public LogNormTerm {
 public:
  explicit RepVectorTerm(RepVector x) : x_(std::move(x)) {}
  int group_size() const override { return x_.group_size(); }
  double log_norm_sq(const FloatMatrix& sigma) const override { return x_.log_norm_sq(sigma); }
  Eigen::MatrixXcd moment(const FloatMatrix& sigma) const override { return x_.moment(sigma); }

 private:
  RepVector x_;
};

/// log |sigma|^2_HS, the norm of sigma . I in End(C^{N+1}).
class HilbertSchmidtTerm final : public LogNormTerm {
 public:
  explicit HilbertSchmidtTerm(int n) : n_(n) {}
  int group_size() const override { return n_; }
  double log_norm_sq(const FloatMatrix& sigma) const override;
  Eigen::MatrixXcd moment(const FloatMatrix& sigma) const override;

 private:
  int n_;
};

/// Decides whether lambda, acting after the unitary conjugator g, destabilizes.
/// Returns the weight margin (positive means destabilizing), or nullopt when undecidable.
using DestabilizerCheck = std::function<std::optional<long>(const OnePSG& lambda, const Eigen::MatrixXcd& g)>;

/// sum_k c_k log |sigma . x_k|^2.
class KempfNessObjective {
 public:
  KempfNessObjective(int n, std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms,
                     DestabilizerCheck check = {});

  int group_size() const { return n_; }
  double value(const FloatMatrix& sigma) const;
  /// Traceless Hermitian G with d/de value(exp(eH) sigma) = Re tr(G^* H).
  Eigen::MatrixXcd gradient(const FloatMatrix& sigma) const;
  const DestabilizerCheck& check() const { return check_; }

 private:
  int n_;
  std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms_;
  DestabilizerCheck check_;
};

KempfNessObjective pair_objective(const Pair& p);
/// (m+1) log|sigma w|^2 - q log|sigma|^2_HS - m log|sigma v|^2.
KempfNessObjective tensored_objective(const TensoredPair& p);

double kempf_ness_value(const FloatMatrix& sigma, const Pair& p);
Eigen::MatrixXcd kempf_ness_gradient(const FloatMatrix& sigma, const Pair& p);
double kempf_ness_value(const FloatMatrix& sigma, const TensoredPair& p);

/// The permutation underlying g when g is within 1e-9 of a phased permutation matrix.
std::optional<ExactMatrix> phased_permutation(const Eigen::MatrixXcd& g);

/// Exact when g is a phased permutation (within 1e-9) and the data are exact; else float supports.
std::optional<long> conjugated_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const Pair& p);
std::optional<long> conjugated_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const TensoredPair& p);

struct DescentOptions {
  int restarts = 5;
  int max_iters = 10000;
  double initial_step = 0.1;
  double shrink = 0.5;
  double grow = 1.2;
  double armijo = 1e-4;
  /// Largest Frobenius norm of one retraction step.
  double max_step_norm = 0.25;
  double divergence_log_norm = 40.0;
  int divergence_streak = 200;
  double gradient_tolerance = 1e-9;
  std::uint64_t seed = 0;
  /// First restart starts at the identity, the rest at seeded random conjugators.
  bool start_at_identity = true;
};

struct DescentDiagnostics {
  int iterations = 0;
  int restarts = 0;
  double final_gradient_norm = 0.0;
  double final_log_hs = 0.0;
  bool converged = false;
  std::vector<double> restart_values;
  std::string note;
};

enum class Verdict { torus_fail, no_divergence_observed, divergence_detected };
std::string to_string(Verdict v);

struct StabilityCertificate {
  Verdict verdict = Verdict::no_divergence_observed;
  std::optional<OnePSG> witness;
  /// Conjugator g such that lambda destabilizes g . (pair); unitary for descent, SL for probes.
  std::optional<Eigen::MatrixXcd> conjugator;
  bool witness_verified = false;
  std::optional<long> witness_margin;
  double inf_estimate = 0.0;
  DescentDiagnostics diagnostics;
  std::uint64_t seed = 0;
  std::string caveat;
};

StabilityCertificate descend(const KempfNessObjective& f, const DescentOptions& opts);
StabilityCertificate descend(const Pair& p, const DescentOptions& opts);

/// Rounds a real direction to a primitive integer one-parameter subgroup (denominators <= max_den).
std::optional<OnePSG> round_direction(const std::vector<double>& direction, int max_den = 16);

/// Destabilizer candidate from a diverging sigma: sigma = U D V^*, lambda ~ -log D, conjugator V^*.
std::pair<std::optional<OnePSG>, Eigen::MatrixXcd> extract_destabilizer(const FloatMatrix& sigma, int max_den = 16);

StabilityCertificate stable_probe(const Pair& p, int m, int trials, const DescentOptions& opts);

}  // namespace stabpair
