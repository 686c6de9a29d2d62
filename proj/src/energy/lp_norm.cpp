#include "stabpair/energy/lp_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stabpair/core/group.hpp"

namespace stabpair {

double fs_pointwise(const FloatPolynomial& p, const std::vector<Complex>& z) {
  require_dims(static_cast<int>(z.size()) == p.shape().variable_count(), "point does not match shape");
  double nrm = 0.0;
  for (const auto& x : z) nrm += std::norm(x);
  require(nrm > 0.0, "fs_pointwise at the zero vector");
  require_nonzero(p, "fs_pointwise");
  return std::norm(p.evaluate(z)) / std::pow(nrm, p.degree());
}

std::vector<double> pointwise_log_sq(const FormEvaluator& f, const SampleSet& s, const FloatMatrix* sigma, int threads) {
  const int rows = f.rows(), cols = f.cols();
  require_dims(s.dim() == rows * cols, "samples do not match the form's variables");
  if (sigma) require_dims(sigma->rows() == cols && sigma->cols() == cols, "group element does not match the form");
  std::vector<double> out(s.count());
  for_each_chunk(s.count(), threads, [&](int begin, int end, int) {
    std::vector<Complex> b(static_cast<std::size_t>(rows) * cols);
    for (int i = begin; i < end; ++i) {
      const Complex* a = s.point(i);
      const Complex* x = a;
      if (sigma) {
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c < cols; ++c) {
            Complex acc = 0.0;
            for (int j = 0; j < cols; ++j) acc += a[r * cols + j] * (*sigma)(j, c);
            b[r * cols + c] = acc;
          }
        x = b.data();
      }
      out[i] = 2.0 * f.log_abs(x);
    }
  });
  return out;
}

MahlerEstimate estimate_from_logs(const std::vector<double>& log_sq, double p, std::uint64_t seed) {
  require(p >= 0.0 && std::isfinite(p), "norm index must be finite and nonnegative");
  const double n = static_cast<double>(log_sq.size());
  MahlerEstimate est;
  est.samples = static_cast<int>(log_sq.size());
  est.seed = seed;
  est.p = p;
  CompensatedSum s1, s2;
  if (p == 0.0) {
    for (double x : log_sq) s1.add(0.5 * x);
    const double mean = s1.value() / n;
    for (double x : log_sq) s2.add((0.5 * x - mean) * (0.5 * x - mean));
    est.log_value = mean;
    est.stderr_value = std::sqrt(s2.value() / (n - 1) / n);
    return est;
  }
  const double top = *std::max_element(log_sq.begin(), log_sq.end());
  for (double x : log_sq) s1.add(std::exp(0.5 * p * (x - top)));
  const double mean = s1.value() / n;
  for (double x : log_sq) {
    double y = std::exp(0.5 * p * (x - top)) - mean;
    s2.add(y * y);
  }
  est.log_value = (std::log(mean) + 0.5 * p * top) / p;
  est.stderr_value = std::sqrt(s2.value() / (n - 1) / n) / (p * mean);
  return est;
}

MahlerEstimate lp_norm(const FormEvaluator& f, double index, const SampleSet& s, const FloatMatrix* sigma, int threads) {
  return estimate_from_logs(pointwise_log_sq(f, s, sigma, threads), index, s.seed());
}

MahlerEstimate lp_norm(const FloatPolynomial& p, double index, const SamplingOptions& opts) {
  require_nonzero(p, "lp_norm");
  if (index == kInfinityIndex) {
    SupNormOptions so;
    so.seed = opts.seed;
    MahlerEstimate est;
    est.log_value = sup_norm(p, so).log_value;
    est.samples = so.samples;
    est.seed = opts.seed;
    est.p = index;
    return est;
  }
  require(opts.samples >= 1000, "lp_norm needs at least 1000 samples");
  PolynomialEvaluator f(p);
  SampleSet s(p.shape().variable_count(), opts.samples, opts.seed);
  return lp_norm(f, index, s, nullptr, opts.threads);
}

namespace {

// log |P(z)|^2 - d log |z|^2 and its ascent direction 2 df/dzbar on the unit sphere.
double objective(const PolynomialEvaluator& f, const std::vector<Complex>& z, std::vector<Complex>* g) {
  Eigen::MatrixXcd dlog;
  const double v = 2.0 * f.log_abs(z.data(), g ? &dlog : nullptr);
  if (g) {
    const int cols = f.cols();
    g->resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      (*g)[i] = std::conj(dlog(static_cast<int>(i) / cols, static_cast<int>(i) % cols)) -
                static_cast<double>(f.degree()) * z[i];
  }
  return v;
}

double vec_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

SupNormReport sup_norm(const FloatPolynomial& p, const SupNormOptions& opts) {
  require_nonzero(p, "sup_norm");
  SupNormReport rep;
  const int dim = p.shape().variable_count();
  if (p.degree() == 0) {
    rep.log_value = std::log(std::abs(p.terms().begin()->second));
    rep.converged = true;
    rep.argmax.assign(dim, Complex(0.0));
    rep.argmax[0] = 1.0;
    return rep;
  }
  PolynomialEvaluator f(p);
  SampleSet s(dim, std::max(opts.samples, 1), opts.seed);
  std::vector<std::pair<double, int>> scored;
  for (int i = 0; i < s.count(); ++i) scored.emplace_back(2.0 * f.log_abs(s.point(i)), i);
  std::sort(scored.begin(), scored.end(), std::greater<>());
  std::vector<std::vector<Complex>> starts;
  for (int k = 0; k < std::min<int>(opts.starts, scored.size()); ++k)
    starts.emplace_back(s.point(scored[k].second), s.point(scored[k].second) + dim);
  for (int i = 0; i < dim; ++i) {
    std::vector<Complex> e(dim, Complex(0.0));
    e[i] = 1.0;
    starts.push_back(e);
  }
  rep.log_value = -std::numeric_limits<double>::infinity();
  rep.starts = static_cast<int>(starts.size());
  for (auto z : starts) {
    std::vector<Complex> g;
    double v = objective(f, z, &g);
    if (!std::isfinite(v)) continue;
    double eta = 0.5;
    double gn = vec_norm(g);
    for (int it = 0; it < opts.max_iters && gn > opts.tolerance; ++it) {
      bool moved = false;
      while (eta > 1e-14) {
        std::vector<Complex> trial(dim);
        for (int i = 0; i < dim; ++i) trial[i] = z[i] + eta * g[i];
        const double nrm = vec_norm(trial);
        for (auto& x : trial) x /= nrm;
        std::vector<Complex> tg;
        double tv = objective(f, trial, &tg);
        if (tv > v) {
          z = trial;
          v = tv;
          g = tg;
          gn = vec_norm(g);
          eta *= 1.5;
          moved = true;
          break;
        }
        eta *= 0.5;
      }
      if (!moved) break;
    }
    if (0.5 * v > rep.log_value) {
      rep.log_value = 0.5 * v;
      rep.stationarity = gn;
      rep.converged = gn <= opts.tolerance;
      rep.argmax = z;
    }
  }
  return rep;
}

double harmonic_number(int n) {
  double h = 0.0;
  for (int j = 1; j <= n; ++j) h += 1.0 / j;
  return h;
}

ArestovReport arestov_check(const FloatPolynomial& p, const SamplingOptions& opts, const SupNormOptions& sup) {
  ArestovReport rep;
  rep.n = p.shape().variable_count() - 1;
  rep.degree = p.degree();
  rep.mahler = lp_norm(p, 0.0, opts);
  SupNormOptions so = sup;
  so.seed = derive_seed(opts.seed, 0x5u);
  rep.sup = sup_norm(p, so);
  rep.lower_bound = -0.5 * rep.degree * harmonic_number(rep.n) + rep.sup.log_value;
  rep.slack = 3.0 * rep.mahler.stderr_value;
  rep.lower_margin = rep.mahler.log_value - rep.lower_bound;
  rep.upper_margin = rep.sup.log_value - rep.mahler.log_value;
  rep.lower_ok = rep.lower_margin >= -rep.slack;
  rep.upper_ok = rep.upper_margin >= -rep.slack;
  return rep;
}

JensenReport jensen_check(const FloatPolynomial& p, double index, const SamplingOptions& opts) {
  require(index > 0.0 && std::isfinite(index), "Jensen check needs 0 < p < inf");
  require_nonzero(p, "jensen_check");
  PolynomialEvaluator f(p);
  SampleSet s(p.shape().variable_count(), opts.samples, opts.seed);
  auto logs = pointwise_log_sq(f, s, nullptr, opts.threads);
  JensenReport rep;
  rep.mahler = estimate_from_logs(logs, 0.0, opts.seed);
  rep.lp = estimate_from_logs(logs, index, opts.seed);
  rep.margin = rep.lp.log_value - rep.mahler.log_value;
  rep.slack = 3.0 * (rep.mahler.stderr_value + rep.lp.stderr_value);
  rep.ok = rep.margin >= -rep.slack;
  return rep;
}

ThetaEstimate conformal_theta(const FloatPolynomial& s, const SamplingOptions& opts) {
  require_nonzero(s, "conformal_theta");
  PolynomialEvaluator f(s);
  SampleSet set(s.shape().variable_count(), opts.samples, opts.seed);
  auto logs = pointwise_log_sq(f, set, nullptr, opts.threads);
  ThetaEstimate t;
  t.mahler = estimate_from_logs(logs, 0.0, opts.seed);
  t.l2 = estimate_from_logs(logs, 2.0, opts.seed);
  t.theta = 2.0 * t.mahler.log_value - 2.0 * t.l2.log_value;
  t.stderr_value = 2.0 * (t.mahler.stderr_value + t.l2.stderr_value);
  return t;
}

}  // namespace stabpair
