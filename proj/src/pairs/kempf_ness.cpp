#include "stabpair/pairs/kempf_ness.hpp"

#include <cmath>
#include <limits>

namespace stabpair {

double HilbertSchmidtTerm::log_norm_sq(const FloatMatrix& sigma) const {
  return log_hermitian_norm_sq(sigma.data());
}

Eigen::MatrixXcd HilbertSchmidtTerm::moment(const FloatMatrix& sigma) const {
  Eigen::MatrixXcd s = to_eigen(sigma);
  double top = s.cwiseAbs().maxCoeff();
  s /= top;
  Eigen::MatrixXcd ss = s * s.adjoint();
  return ss.transpose() / ss.trace().real();
}

KempfNessObjective::KempfNessObjective(int n, std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms,
                                       DestabilizerCheck check)
    : n_(n), terms_(std::move(terms)), check_(std::move(check)) {
  for (const auto& [c, t] : terms_) require_dims(t->group_size() == n_, "objective term acts through another group");
}

double KempfNessObjective::value(const FloatMatrix& sigma) const {
  double s = 0.0;
  for (const auto& [c, t] : terms_)
    if (c != 0.0) s += c * t->log_norm_sq(sigma);
  return s;
}

Eigen::MatrixXcd KempfNessObjective::gradient(const FloatMatrix& sigma) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& [c, t] : terms_)
    if (c != 0.0) m += c * t->moment(sigma);
  return traceless_hermitian_part(2.0 * m.conjugate());
}

std::optional<ExactMatrix> phased_permutation(const Eigen::MatrixXcd& g) {
  const int n = static_cast<int>(g.rows());
  ExactMatrix p(n, n);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int hit = -1;
    for (int j = 0; j < n; ++j) {
      double a = std::abs(g(i, j));
      if (std::abs(a - 1.0) < 1e-9) {
        if (hit >= 0 || used[j]) return std::nullopt;
        hit = j;
      } else if (a > 1e-9) {
        return std::nullopt;
      }
    }
    if (hit < 0) return std::nullopt;
    used[hit] = true;
    p(i, hit) = GaussianRational(1);
  }
  return p;
}

namespace {

template <class ActExact, class ActFloat>
std::optional<long> margin_after(const OnePSG& lambda, const Eigen::MatrixXcd& g, bool exact,
                                 ActExact act_exact, ActFloat act_float) {
  if (exact)
    if (auto perm = phased_permutation(g)) return witness_margin(lambda, act_exact(*perm));
  return witness_margin(lambda, act_float(from_eigen(g)));
}

}  // namespace

std::optional<long> conjugated_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const Pair& p) {
  return margin_after(
      lambda, g, p.is_exact(), [&](const ExactMatrix& m) { return p.act_exact(m); },
      [&](const FloatMatrix& m) { return p.act(m); });
}

std::optional<long> conjugated_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const TensoredPair& p) {
  return margin_after(
      lambda, g, p.base.is_exact(),
      [&](const ExactMatrix& m) { return TensoredPair{p.base.act_exact(m), p.m, p.q}; },
      [&](const FloatMatrix& m) { return TensoredPair{p.base.act(m), p.m, p.q}; });
}

KempfNessObjective pair_objective(const Pair& p) {
  std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms{
      {1.0, std::make_shared<RepVectorTerm>(p.w())}, {-1.0, std::make_shared<RepVectorTerm>(p.v())}};
  return KempfNessObjective(p.group_size(), std::move(terms),
                            [p](const OnePSG& l, const Eigen::MatrixXcd& g) { return conjugated_margin(l, g, p); });
}

KempfNessObjective tensored_objective(const TensoredPair& p) {
  const int n = p.base.group_size();
  std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms{
      {p.m + 1.0, std::make_shared<RepVectorTerm>(p.base.w())},
      {-static_cast<double>(p.q), std::make_shared<HilbertSchmidtTerm>(n)},
      {-static_cast<double>(p.m), std::make_shared<RepVectorTerm>(p.base.v())}};
  return KempfNessObjective(n, std::move(terms),
                            [p](const OnePSG& l, const Eigen::MatrixXcd& g) { return conjugated_margin(l, g, p); });
}

double kempf_ness_value(const FloatMatrix& sigma, const Pair& p) {
  return p.w().log_norm_sq(sigma) - p.v().log_norm_sq(sigma);
}

Eigen::MatrixXcd kempf_ness_gradient(const FloatMatrix& sigma, const Pair& p) {
  return pair_objective(p).gradient(sigma);
}

double kempf_ness_value(const FloatMatrix& sigma, const TensoredPair& p) { return tensored_objective(p).value(sigma); }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::torus_fail:
      return "torus-fail";
    case Verdict::no_divergence_observed:
      return "no-divergence-observed";
    case Verdict::divergence_detected:
      return "divergence-detected";
  }
  return "unknown";
}

namespace {

mpq_class best_rational(double x, int max_den) {
  // Continued-fraction convergents, stopping before the denominator exceeds max_den.
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int k = 0; k < 64; ++k) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double frac = r - a;
    if (frac < 1e-12) break;
    r = 1.0 / frac;
  }
  return mpq_class(p1, q1);
}

double log_hs(const FloatMatrix& s) { return log_hermitian_norm_sq(s.data()); }

}  // namespace

std::optional<OnePSG> round_direction(const std::vector<double>& direction, int max_den) {
  double mean = 0.0;
  for (double x : direction) mean += x;
  mean /= static_cast<double>(direction.size());
  double top = 0.0;
  for (double x : direction) top = std::max(top, std::abs(x - mean));
  if (top == 0.0) return std::nullopt;
  std::vector<mpq_class> q;
  for (double x : direction) {
    mpq_class r = best_rational((x - mean) / top, max_den);
    r.canonicalize();
    q.push_back(r);
  }
  auto v = primitive_traceless(q);
  bool nonzero = false;
  for (long x : v) nonzero = nonzero || x != 0;
  if (!nonzero) return std::nullopt;
  return OnePSG(v);
}

std::pair<std::optional<OnePSG>, Eigen::MatrixXcd> extract_destabilizer(const FloatMatrix& sigma, int max_den) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(sigma), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<double> dir;
  for (int i = 0; i < s.size(); ++i) dir.push_back(-std::log(s(i)));
  return {round_direction(dir, max_den), svd.matrixV().adjoint()};
}

StabilityCertificate descend(const KempfNessObjective& f, const DescentOptions& opts) {
  require(opts.restarts >= 1 && opts.max_iters >= 0, "descent needs restarts >= 1 and max_iters >= 0");
  const int n = f.group_size();
  StabilityCertificate cert;
  cert.seed = opts.seed;
  cert.inf_estimate = std::numeric_limits<double>::infinity();
  cert.caveat = "no-divergence-observed is evidence only; it does not prove semistability";
  auto& diag = cert.diagnostics;
  bool any_unconverged = false;

  for (int r = 0; r < opts.restarts; ++r) {
    diag.restarts = r + 1;
    FloatMatrix sigma = FloatMatrix::identity(n);
    if (r > 0 || !opts.start_at_identity) {
      std::mt19937_64 rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
      sigma = random_special_linear(n, rng);
    }
    double value = f.value(sigma);
    double best = value;
    double eta = opts.initial_step;
    int streak = 0;
    bool converged = false;
    double gnorm = 0.0;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
      Eigen::MatrixXcd g = f.gradient(sigma);
      gnorm = g.norm();
      if (gnorm < opts.gradient_tolerance) {
        converged = true;
        break;
      }
      bool accepted = false;
      FloatMatrix next;
      double next_value = value;
      double step = eta;
      while (step > 1e-16) {
        double t = std::min(step, opts.max_step_norm / gnorm);
        next = from_eigen(matrix_exp(-t * g) * to_eigen(sigma));
        next_value = f.value(next);
        if (std::isfinite(next_value) && next_value <= value - opts.armijo * t * gnorm * gnorm) {
          accepted = true;
          eta = t * opts.grow;
          break;
        }
        step = t * opts.shrink;
      }
      if (!accepted) {
        diag.note = "line search stalled";
        break;
      }
      streak = next_value < value ? streak + 1 : 0;
      sigma = next;
      value = next_value;
      best = std::min(best, value);
      if (log_hs(sigma) > opts.divergence_log_norm && streak >= opts.divergence_streak) {
        diag.iterations += it + 1;
        diag.final_gradient_norm = gnorm;
        diag.final_log_hs = log_hs(sigma);
        diag.restart_values.push_back(best);
        cert.inf_estimate = std::min(cert.inf_estimate, best);
        cert.verdict = Verdict::divergence_detected;
        cert.caveat = "value decreased monotonically while log |sigma|^2 exceeded the threshold";
        auto [lambda, conj] = extract_destabilizer(sigma);
        cert.conjugator = conj;
        if (lambda) {
          cert.witness = lambda;
          if (f.check()) {
            cert.witness_margin = f.check()(*lambda, conj);
            cert.witness_verified = cert.witness_margin && *cert.witness_margin > 0;
          }
        }
        if (!cert.witness_verified) diag.note = "destabilizer candidate rejected by the exact weight test";
        return cert;
      }
    }
    diag.iterations += it;
    diag.final_gradient_norm = gnorm;
    diag.final_log_hs = log_hs(sigma);
    diag.restart_values.push_back(best);
    cert.inf_estimate = std::min(cert.inf_estimate, best);
    if (!converged) any_unconverged = true;
    diag.converged = diag.converged || converged;
  }
  if (any_unconverged && diag.note.empty()) diag.note = "some restarts stopped before the gradient tolerance";
  return cert;
}

StabilityCertificate descend(const Pair& p, const DescentOptions& opts) { return descend(pair_objective(p), opts); }

StabilityCertificate stable_probe(const Pair& p, int m, int trials, const DescentOptions& opts) {
  TensoredPair tp = build_stable_test_pair(p, m);
  ProbeResult probe = randomized_torus_probe(tp, trials, opts.seed);
  if (!probe.passed) {
    StabilityCertificate cert;
    cert.verdict = Verdict::torus_fail;
    cert.witness = probe.witness;
    cert.conjugator = to_eigen(*probe.conjugator);
    cert.seed = opts.seed;
    cert.witness_margin = witness_margin(*probe.witness, TensoredPair{tp.base.act(*probe.conjugator), tp.m, tp.q});
    cert.witness_verified = *cert.witness_margin > 0;
    cert.inf_estimate = -std::numeric_limits<double>::infinity();
    cert.caveat = "torus test failed at trial " + std::to_string(*probe.failing_trial) + " (" + probe.conjugator_kind + ")";
    return cert;
  }
  return descend(tensored_objective(tp), opts);
}

}  // namespace stabpair
