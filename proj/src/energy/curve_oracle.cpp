#include "stabpair/energy/curve_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <thread>

namespace stabpair {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  require(n >= 1, "Gauss-Legendre needs at least one node");
  // Golub-Welsch: eigenvalues of the Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v = es.eigenvectors()(0, i);
    w[i] = v * v;  // 2 v^2 on [-1, 1], halved on [0, 1]
  }
  return {x, w};
}

namespace {

constexpr double kPi = std::numbers::pi;

/// m . gamma in one affine chart, as polynomial coefficients in z.
class PulledCurve {
 public:
  PulledCurve(const Eigen::MatrixXcd& m, const RationalCurve& c, bool swap) : n_(c.ambient() + 1), d_(c.degree()) {
    require_dims(m.rows() == n_ && m.cols() == n_, "matrix does not match the curve's ambient space");
    // coef_[i * (d+1) + p] multiplies z^p in component i.
    coef_.assign(static_cast<std::size_t>(n_) * (d_ + 1), 0.0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (m(i, j) == Complex(0.0)) continue;
        const auto& b = c.binary()[j].coeffs;
        for (int k = 0; k <= d_; ++k) {
          const int p = swap ? k : d_ - k;
          coef_[i * (d_ + 1) + p] += m(i, j) * b[k].to_complex();
        }
      }
  }

  int size() const { return n_; }

  /// Value, first and optionally second derivative at z.
  void jet(Complex z, Complex* y, Complex* dy, Complex* d2y = nullptr) const {
    for (int i = 0; i < n_; ++i) {
      const Complex* c = coef_.data() + static_cast<std::size_t>(i) * (d_ + 1);
      Complex v = 0.0, dv = 0.0, d2v = 0.0;
      for (int p = d_; p >= 0; --p) {
        d2v = d2v * z + 2.0 * dv;
        dv = dv * z + v;
        v = v * z + c[p];
      }
      y[i] = v;
      dy[i] = dv;
      if (d2y) d2y[i] = d2v;
    }
  }

  double log_g(Complex z, std::vector<Complex>& buf) const {
    buf.resize(2 * n_);
    jet(z, buf.data(), buf.data() + n_);
    double g0, g1;
    grams(buf.data(), buf.data() + n_, g0, g1);
    return std::log(g1) - 2.0 * std::log(g0);
  }

  void grams(const Complex* y, const Complex* dy, double& g0, double& g1) const {
    double yy = 0.0, dd = 0.0;
    Complex dyy = 0.0;
    for (int i = 0; i < n_; ++i) {
      yy += std::norm(y[i]);
      dd += std::norm(dy[i]);
      dyy += dy[i] * std::conj(y[i]);
    }
    g0 = yy;
    g1 = yy * dd - std::norm(dyy);
  }

  /// Laplacian of log g by the fourth-order five-point stencil in each direction.
  double laplacian_log_g(Complex z, double h, std::vector<Complex>& buf) const {
    const double f0 = log_g(z, buf);
    double sum = 0.0;
    for (Complex dir : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
      const double p1 = log_g(z + h * dir, buf), m1 = log_g(z - h * dir, buf);
      const double p2 = log_g(z + 2.0 * h * dir, buf), m2 = log_g(z - 2.0 * h * dir, buf);
      sum += (-p2 + 16.0 * p1 - 30.0 * f0 + 16.0 * m1 - m2) / (12.0 * h * h);
    }
    return sum;
  }

 private:
  int n_, d_;
  std::vector<Complex> coef_;
};

struct GridPoint {
  Complex z;
  bool swap;
  double weight;  // dA weight
};

std::vector<GridPoint> polar_grid(int radial, int angular) {
  auto [r, wr] = gauss_legendre(radial);
  std::vector<GridPoint> out;
  out.reserve(2 * static_cast<std::size_t>(radial) * angular);
  for (bool swap : {false, true})
    for (int i = 0; i < radial; ++i)
      for (int j = 0; j < angular; ++j) {
        // Offset the angular nodes between charts so the two grids do not mirror each other.
        const double theta = 2.0 * kPi * (j + (swap ? 0.5 : 0.0)) / angular;
        out.push_back({std::polar(r[i], theta), swap, wr[i] * r[i] * 2.0 * kPi / angular});
      }
  return out;
}

struct Polar {
  Eigen::MatrixXcd p;  // (sigma^* sigma)^{1/2}
  Eigen::MatrixXcd h;  // log p
  Eigen::MatrixXcd vecs;
  Eigen::VectorXd logs;
  Eigen::MatrixXcd exp_t(double t) const {
    Eigen::VectorXcd e(logs.size());
    for (int i = 0; i < logs.size(); ++i) e(i) = std::exp(t * logs(i));
    return vecs * e.asDiagonal() * vecs.adjoint();
  }
};

Polar polar_part(const FloatMatrix& sigma) {
  Eigen::MatrixXcd s = to_eigen(sigma);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.adjoint() * s);
  Polar out;
  out.vecs = es.eigenvectors();
  out.logs.resize(s.rows());
  for (int i = 0; i < s.rows(); ++i) {
    const double ev = es.eigenvalues()(i);
    require(ev > 0.0, "oracle needs an invertible group element");
    out.logs(i) = 0.5 * std::log(ev);
  }
  out.p = out.exp_t(1.0);
  Eigen::VectorXcd l = out.logs.cast<Complex>();
  out.h = out.vecs * l.asDiagonal() * out.vecs.adjoint();
  return out;
}

struct LevelResult {
  double volume, mu, j, phi_mean, f0, nu;
};

template <class Body>
void parallel_for(int count, int threads, Body body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = std::min(threads, count);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

LevelResult run_level(const Polar& pol, const RationalCurve& c, int radial, int angular, const OracleOptions& opts) {
  const auto grid = polar_grid(radial, angular);
  const int n = c.ambient() + 1;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const PulledCurve base[2] = {PulledCurve(id, c, false), PulledCurve(id, c, true)};
  const PulledCurve moved[2] = {PulledCurve(pol.p, c, false), PulledCurve(pol.p, c, true)};
  const double h = opts.fd_step;

  double vol = 0.0, curv = 0.0, jint = 0.0, phi_int = 0.0;
  std::vector<Complex> y(n), dy(n), py(n), pdy(n), buf;
  for (const auto& pt : grid) {
    const PulledCurve& b = base[pt.swap];
    const PulledCurve& m = moved[pt.swap];
    b.jet(pt.z, y.data(), dy.data());
    m.jet(pt.z, py.data(), pdy.data());
    double g0, g1, q0, q1;
    b.grams(y.data(), dy.data(), g0, g1);
    m.grams(py.data(), pdy.data(), q0, q1);
    const double g = g1 / (g0 * g0);
    vol += pt.weight * g / kPi;
    curv += pt.weight * (-b.laplacian_log_g(pt.z, h, buf) / (4.0 * kPi));
    Complex a = 0.0, e = 0.0;
    for (int i = 0; i < n; ++i) {
      a += pdy[i] * std::conj(py[i]);
      e += dy[i] * std::conj(y[i]);
    }
    const Complex phi_z = a / q0 - e / g0;
    jint += pt.weight * std::norm(phi_z) / (2.0 * kPi);
    phi_int += pt.weight * std::log(q0 / g0) * g / kPi;
  }
  LevelResult res{};
  res.volume = vol;
  res.mu = curv / vol;
  res.j = jint / vol;
  res.phi_mean = phi_int / vol;
  res.f0 = res.j - res.phi_mean;

  auto [tn, tw] = gauss_legendre(opts.time_nodes);
  std::vector<double> slice(tn.size(), 0.0);
  parallel_for(static_cast<int>(tn.size()), opts.threads, [&](int k) {
    const Eigen::MatrixXcd mt = pol.exp_t(tn[k]);
    const PulledCurve path[2] = {PulledCurve(mt, c, false), PulledCurve(mt, c, true)};
    const Eigen::MatrixXcd& hm = pol.h;
    std::vector<Complex> yt(n), dyt(n), lbuf;
    double acc = 0.0;
    for (const auto& pt : grid) {
      const PulledCurve& pc = path[pt.swap];
      pc.jet(pt.z, yt.data(), dyt.data());
      double g0, g1;
      pc.grams(yt.data(), dyt.data(), g0, g1);
      const double g = g1 / (g0 * g0);
      double num = 0.0;
      for (int i = 0; i < n; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < n; ++j) s += hm(i, j) * yt[j];
        num += std::real(s * std::conj(yt[i]));
      }
      const double phi_dot = 2.0 * num / g0;
      const double scal_density = -pc.laplacian_log_g(pt.z, h, lbuf) / (4.0 * kPi);
      acc += pt.weight * phi_dot * (scal_density - res.mu * g / kPi);
    }
    slice[k] = acc;
  });
  double nu = 0.0;
  for (std::size_t k = 0; k < tn.size(); ++k) nu += tw[k] * slice[k];
  res.nu = -nu / vol;
  return res;
}

}  // namespace

CurveGeometryReport curve_geometry_oracle(const FloatMatrix& sigma, const RationalCurve& c,
                                          const OracleOptions& opts) {
  require(opts.radial >= 2 && opts.angular >= 4 && opts.max_levels >= 1, "oracle grid too small");
  const Polar pol = polar_part(sigma);
  CurveGeometryReport rep;
  std::optional<LevelResult> prev;
  int radial = opts.radial, angular = opts.angular;
  for (int level = 1; level <= opts.max_levels; ++level) {
    LevelResult cur = run_level(pol, c, radial, angular, opts);
    rep.volume = cur.volume;
    rep.mu = cur.mu;
    rep.aubin_j = cur.j;
    rep.phi_mean = cur.phi_mean;
    rep.aubin_f0 = cur.f0;
    rep.k_energy = cur.nu;
    rep.radial = radial;
    rep.angular = angular;
    rep.levels = level;
    if (prev) {
      rep.last_change = std::max({std::abs(cur.volume - prev->volume), std::abs(cur.mu - prev->mu),
                                  std::abs(cur.j - prev->j), std::abs(cur.f0 - prev->f0),
                                  std::abs(cur.nu - prev->nu)});
      if (rep.last_change < opts.tolerance) {
        rep.converged = true;
        break;
      }
    }
    prev = cur;
    radial *= 2;
    angular *= 2;
  }
  return rep;
}

double scalar_curvature_fd(const Eigen::MatrixXcd& m, const RationalCurve& c, Complex z, bool swap, double h) {
  PulledCurve pc(m, c, swap);
  std::vector<Complex> y(pc.size()), dy(pc.size()), buf;
  pc.jet(z, y.data(), dy.data());
  double g0, g1;
  pc.grams(y.data(), dy.data(), g0, g1);
  return -pc.laplacian_log_g(z, h, buf) / (4.0 * g1 / (g0 * g0));
}

double scalar_curvature_jet(const Eigen::MatrixXcd& m, const RationalCurve& c, Complex z, bool swap) {
  PulledCurve pc(m, c, swap);
  const int n = pc.size();
  Eigen::MatrixXcd jet(n, 3);
  std::vector<Complex> y(n), dy(n), d2y(n);
  pc.jet(z, y.data(), dy.data(), d2y.data());
  for (int i = 0; i < n; ++i) {
    jet(i, 0) = y[i];
    jet(i, 1) = dy[i];
    jet(i, 2) = d2y[i];
  }
  const Eigen::MatrixXcd gram = jet.adjoint() * jet;
  const double g0 = std::real(gram(0, 0));
  const double g1 = std::real(gram.topLeftCorner(2, 2).determinant());
  const double g2 = n >= 3 ? std::real(gram.determinant()) : 0.0;
  return 2.0 - g0 * g0 * g0 * g2 / (g1 * g1 * g1);
}

}  // namespace stabpair
