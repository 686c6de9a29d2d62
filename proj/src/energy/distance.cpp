#include "stabpair/energy/distance.hpp"

#include <algorithm>
#include <cmath>

namespace stabpair {

namespace {

// (2/p) log mean exp(p/2 L) for p > 0, mean L for p = 0.
double log_mean_power(const std::vector<double>& log_sq, double p) {
  CompensatedSum s;
  if (p == 0.0) {
    for (double x : log_sq) s.add(x);
    return s.value() / static_cast<double>(log_sq.size());
  }
  const double top = *std::max_element(log_sq.begin(), log_sq.end());
  for (double x : log_sq) s.add(std::exp(0.5 * p * (x - top)));
  return 2.0 / p * std::log(s.value() / static_cast<double>(log_sq.size())) + top;
}

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_index(double p) { require(p >= 0.0 && std::isfinite(p), "distance needs a finite index p >= 0"); }

}  // namespace

SampledLogNormTerm::SampledLogNormTerm(std::shared_ptr<const FormEvaluator> f, std::shared_ptr<const SampleSet> s,
                                       double index, int threads)
    : f_(std::move(f)), s_(std::move(s)), index_(index), threads_(threads) {
  require_index(index);
  require_dims(s_->dim() == f_->rows() * f_->cols(), "samples do not match the form");
  offset_ = raw(FloatMatrix::identity(f_->cols()));
}

double SampledLogNormTerm::raw(const FloatMatrix& sigma) const {
  return log_mean_power(pointwise_log_sq(*f_, *s_, &sigma, threads_), index_);
}

double SampledLogNormTerm::log_norm_sq(const FloatMatrix& sigma) const { return raw(sigma) - offset_; }

Eigen::MatrixXcd SampledLogNormTerm::moment(const FloatMatrix& sigma) const {
  const int rows = f_->rows(), cols = f_->cols(), count = s_->count();
  const Eigen::MatrixXcd sig = to_eigen(sigma);
  const Eigen::MatrixXcd sig_t = sig.transpose();
  std::vector<double> log_sq(count);
  std::vector<Eigen::MatrixXcd> q(count);
  for_each_chunk(count, threads_, [&](int begin, int end, int) {
    RowMajorMatrix a(rows, cols), b(rows, cols);
    Eigen::MatrixXcd dlog;
    for (int i = begin; i < end; ++i) {
      const Complex* p = s_->point(i);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) a(r, c) = p[r * cols + c];
      b.noalias() = a * sig;
      log_sq[i] = 2.0 * f_->log_abs(b.data(), &dlog);
      q[i] = a.transpose() * dlog * sig_t;
    }
  });
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cols, cols);
  if (index_ == 0.0) {
    for (int i = 0; i < count; ++i) m += q[i];
    return m / static_cast<double>(count);
  }
  const double top = *std::max_element(log_sq.begin(), log_sq.end());
  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    const double w = std::exp(0.5 * index_ * (log_sq[i] - top));
    total += w;
    m += w * q[i];
  }
  return m / total;
}

LogNormShift log_norm_shift(const FormEvaluator& f, const SampleSet& s, const FloatMatrix& sigma, double index,
                            int threads) {
  require_index(index);
  const auto moved = pointwise_log_sq(f, s, &sigma, threads);
  const auto base = pointwise_log_sq(f, s, nullptr, threads);
  const double n = static_cast<double>(s.count());
  LogNormShift out;
  CompensatedSum s1, s2;
  if (index == 0.0) {
    std::vector<double> diff(moved.size());
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = 0.5 * (moved[i] - base[i]);
      s1.add(diff[i]);
    }
    out.value = s1.value() / n;
    for (double x : diff) s2.add((x - out.value) * (x - out.value));
    out.stderr_value = std::sqrt(s2.value() / (n - 1) / n);
    return out;
  }
  out.value = 0.5 * (log_mean_power(moved, index) - log_mean_power(base, index));
  // Delta method for log(mean Y) - log(mean Z) with Y, Z on common samples.
  const double tm = *std::max_element(moved.begin(), moved.end());
  const double tb = *std::max_element(base.begin(), base.end());
  std::vector<double> y(moved.size()), z(base.size());
  CompensatedSum sy, sz;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = std::exp(0.5 * index * (moved[i] - tm));
    z[i] = std::exp(0.5 * index * (base[i] - tb));
    sy.add(y[i]);
    sz.add(z[i]);
  }
  const double my = sy.value() / n, mz = sz.value() / n;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double u = y[i] / my - z[i] / mz;
    s1.add(u);
    s2.add(u * u);
  }
  const double mu = s1.value() / n;
  out.stderr_value = std::sqrt(std::max(0.0, s2.value() / n - mu * mu) / (n - 1)) / index;
  return out;
}

LogTanEstimate log_tan_dist_p(const FloatMatrix& sigma, const XPair& xp, double p) {
  xp.require_delta();
  require_index(p);
  const int t = xp.sampling.threads;
  auto delta = log_norm_shift(*xp.delta_eval, *xp.delta_samples, sigma, p * xp.deg_r, t);
  auto r = log_norm_shift(*xp.r_eval, *xp.r_samples, sigma, p * xp.deg_delta, t);
  LogTanEstimate out;
  out.p = p;
  out.log_tan = xp.deg_r * delta.value - xp.deg_delta * r.value;
  out.log_tan_sq = 2.0 * out.log_tan;
  out.stderr_value = 2.0 * std::hypot(xp.deg_r * delta.stderr_value, xp.deg_delta * r.stderr_value);
  return out;
}

namespace {

struct PairEvaluators {
  std::shared_ptr<const FormEvaluator> v, w;
  std::shared_ptr<const SampleSet> vs, ws;
};

PairEvaluators pair_evaluators(const Pair& pair, const SamplingOptions& opts) {
  if (!pair.v().is_polynomial() || !pair.w().is_polynomial())
    throw PreconditionError("L^p distances need polynomial data on both sides");
  auto poly = [](const RepVector& x) { return std::get<FloatPolynomial>(x.to_float().storage()); };
  PairEvaluators e;
  auto pv = poly(pair.v()), pw = poly(pair.w());
  e.v = std::make_shared<PolynomialEvaluator>(pv);
  e.w = std::make_shared<PolynomialEvaluator>(pw);
  e.vs = std::make_shared<SampleSet>(pv.shape().variable_count(), opts.samples, derive_seed(opts.seed, 1));
  // Same stream on both sides, so v = w gives identical estimates.
  e.ws = std::make_shared<SampleSet>(pw.shape().variable_count(), opts.samples, derive_seed(opts.seed, 1));
  return e;
}

}  // namespace

LogTanEstimate log_tan_dist_p(const FloatMatrix& sigma, const Pair& pair, double p, const SamplingOptions& opts) {
  require_index(p);
  auto e = pair_evaluators(pair, opts);
  auto w = log_norm_shift(*e.w, *e.ws, sigma, p, opts.threads);
  auto v = log_norm_shift(*e.v, *e.vs, sigma, p, opts.threads);
  LogTanEstimate out;
  out.p = p;
  out.log_tan = w.value - v.value;
  out.log_tan_sq = 2.0 * out.log_tan;
  out.stderr_value = 2.0 * std::hypot(w.stderr_value, v.stderr_value);
  return out;
}

std::optional<long> x_pair_margin(const OnePSG& lambda, const Eigen::MatrixXcd& g, const XPair& xp) {
  if (!xp.r_form || !xp.delta_form) return std::nullopt;
  RepVector r(*xp.r_form), delta(*xp.delta_form);
  if (auto perm = phased_permutation(g)) {
    r = r.act_exact(*perm);
    delta = delta.act_exact(*perm);
  } else {
    r = r.act(from_eigen(g));
    delta = delta.act(from_eigen(g));
  }
  return xp.deg_r * delta.polytope(kSupportTolerance).min_pairing(lambda) -
         xp.deg_delta * r.polytope(kSupportTolerance).min_pairing(lambda);
}

KempfNessObjective x_pair_objective(const XPair& xp, double p) {
  xp.require_delta();
  require_index(p);
  const int t = xp.sampling.threads;
  std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms{
      {static_cast<double>(xp.deg_r),
       std::make_shared<SampledLogNormTerm>(xp.delta_eval, xp.delta_samples, p * xp.deg_r, t)},
      {-static_cast<double>(xp.deg_delta),
       std::make_shared<SampledLogNormTerm>(xp.r_eval, xp.r_samples, p * xp.deg_delta, t)}};
  return KempfNessObjective(xp.ambient + 1, std::move(terms),
                            [xp](const OnePSG& l, const Eigen::MatrixXcd& g) { return x_pair_margin(l, g, xp); });
}

StabilityCertificate orbit_distance(const XPair& xp, double p, const DescentOptions& opts) {
  return descend(x_pair_objective(xp, p), opts);
}

StabilityCertificate orbit_distance(const Pair& pair, double p, const DescentOptions& opts,
                                    const SamplingOptions& sampling) {
  require_index(p);
  auto e = pair_evaluators(pair, sampling);
  std::vector<std::pair<double, std::shared_ptr<const LogNormTerm>>> terms{
      {1.0, std::make_shared<SampledLogNormTerm>(e.w, e.ws, p, sampling.threads)},
      {-1.0, std::make_shared<SampledLogNormTerm>(e.v, e.vs, p, sampling.threads)}};
  KempfNessObjective f(pair.group_size(), std::move(terms),
                       [pair](const OnePSG& l, const Eigen::MatrixXcd& g) { return conjugated_margin(l, g, pair); });
  return descend(f, opts);
}

EnergyEstimate k_energy_algebraic(const FloatMatrix& sigma, const XPair& xp) {
  auto lt = log_tan_dist_p(sigma, xp, 0.0);
  const double scale = static_cast<double>(xp.degree) * xp.degree * (xp.n + 1);
  return {lt.log_tan_sq / scale, lt.stderr_value / scale};
}

EnergyEstimate aubin_f0_algebraic(const FloatMatrix& sigma, const XPair& xp) {
  auto r = log_norm_shift(*xp.r_eval, *xp.r_samples, sigma, 0.0, xp.sampling.threads);
  return {-r.value / xp.deg_r, r.stderr_value / xp.deg_r};
}

EnergyEstimate coercivity_value(const FloatMatrix& sigma, const XPair& xp, int m, int k) {
  xp.require_delta();
  require(m >= 1 && k >= 1, "coercivity needs m >= 1 and k >= 1");
  const int t = xp.sampling.threads;
  auto delta = log_norm_shift(*xp.delta_eval, *xp.delta_samples, sigma, 0.0, t);
  auto r = log_norm_shift(*xp.r_eval, *xp.r_samples, sigma, 0.0, t);
  const double km = static_cast<double>(k) * m;
  const double q = static_cast<double>(xp.deg_r) * xp.deg_delta;
  const double hs = to_eigen(sigma).squaredNorm();
  const double prefactor = std::pow(static_cast<double>(k), -(2.0 * xp.n + 1.0)) / (xp.n + 1.0);
  const double cw = km * xp.deg_r * 2.0, cv = (km - 1.0) * xp.deg_delta * 2.0;
  EnergyEstimate out;
  out.value = prefactor * (cw * delta.value - q * std::log(hs) - cv * r.value);
  out.stderr_value = prefactor * std::hypot(cw * delta.stderr_value, cv * r.stderr_value);
  return out;
}

std::vector<std::pair<int, XPair>> rational_normal_family(int d, const std::vector<int>& ks,
                                                          const SamplingOptions& opts) {
  require(d >= 1, "base degree must be positive");
  std::vector<std::pair<int, XPair>> out;
  for (int k : ks) {
    require(k >= 1, "embedding power must be positive");
    out.emplace_back(k, build_x_pair(RationalCurve::rational_normal(k * d), opts));
  }
  return out;
}

std::vector<AsymptoticRow> asymptotic_report(const std::vector<std::pair<int, XPair>>& family,
                                             const DescentOptions& opts) {
  require(!family.empty(), "asymptotic report needs at least one embedding");
  std::vector<AsymptoticRow> rows;
  for (const auto& [k, xp] : family) {
    AsymptoticRow row;
    row.k = k;
    row.degree = xp.degree;
    row.ambient = xp.ambient;
    auto cert = orbit_distance(xp, 0.0, opts);
    row.verdict = to_string(cert.verdict);
    row.inf_log_tan_sq = cert.inf_estimate;
    row.neg_inf = -cert.inf_estimate;
    const double two_n = 2.0 * xp.n;
    row.by_k_2n = row.neg_inf / std::pow(k, two_n);
    row.by_k_2n1 = row.neg_inf / std::pow(k, two_n + 1.0);
    row.by_degree_2n = row.neg_inf / std::pow(xp.degree, two_n);
    row.by_degree_2n1 = row.neg_inf / std::pow(xp.degree, two_n + 1.0);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stabpair
