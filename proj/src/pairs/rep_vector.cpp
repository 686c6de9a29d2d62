#include "stabpair/pairs/rep_vector.hpp"

#include <cmath>
#include <limits>

namespace stabpair {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Coefficients rescaled so the largest weighted square is 1; returns the log of the scale.
double rescale(const FloatPolynomial& p, std::map<Exponent, Complex>* scaled, std::map<Exponent, double>* logw) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [e, c] : p.terms()) {
    double lw = log_l2_monomial_weight(e);
    (*logw)[e] = lw;
    top = std::max(top, 2.0 * std::log(std::abs(c)) + lw);
  }
  const double s = std::exp(-0.5 * top);
  for (const auto& [e, c] : p.terms()) (*scaled)[e] = c * s;
  return top;
}

}  // namespace

double log_l2_monomial_weight(const Exponent& a) {
  const int m = static_cast<int>(a.size());
  int d = 0;
  double r = std::lgamma(m);
  for (int x : a) {
    r += std::lgamma(x + 1.0);
    d += x;
  }
  return r - std::lgamma(d + m);
}

double log_l2_norm_sq(const FloatPolynomial& p) {
  require_nonzero(p, "log_l2_norm_sq");
  std::map<Exponent, Complex> u;
  std::map<Exponent, double> lw;
  const double top = rescale(p, &u, &lw);
  double sum = 0.0;
  for (const auto& [e, c] : u) sum += std::norm(c) * std::exp(lw[e]);
  return top + std::log(sum);
}

Eigen::MatrixXcd l2_moment(const FloatPolynomial& p) {
  require_nonzero(p, "l2_moment");
  const VariableShape& sh = p.shape();
  const int n = sh.cols;
  std::map<Exponent, Complex> u;
  std::map<Exponent, double> lw;
  rescale(p, &u, &lw);
  double norm = 0.0;
  for (const auto& [e, c] : u) norm += std::norm(c) * std::exp(lw[e]);
  // rho(E_ij) z^a = sum_r a_{rj} z^{a - e_rj + e_ri}; monomials are orthogonal.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [a, ca] : u)
    for (int r = 0; r < sh.rows; ++r)
      for (int j = 0; j < n; ++j) {
        const int aj = a[sh.index(r, j)];
        if (aj == 0) continue;
        for (int i = 0; i < n; ++i) {
          Exponent b = a;
          b[sh.index(r, j)] -= 1;
          b[sh.index(r, i)] += 1;
          auto it = u.find(b);
          if (it == u.end()) continue;
          m(i, j) += ca * static_cast<double>(aj) * std::conj(it->second) * std::exp(lw[b]);
        }
      }
  return m / norm;
}

double log_hermitian_norm_sq(const std::vector<Complex>& dense) {
  double top = 0.0;
  for (const auto& x : dense) top = std::max(top, std::abs(x));
  require(top > 0.0, "log_hermitian_norm_sq: zero vector");
  double sum = 0.0;
  for (const auto& x : dense) sum += std::norm(x / top);
  return 2.0 * std::log(top) + std::log(sum);
}

namespace {

Eigen::MatrixXcd tensor_moment(const FloatTensor& t, const std::vector<Complex>& u) {
  const int n = t.group_size();
  const auto dims = slot_dimensions(t.slots(), n);
  double top = 0.0;
  for (const auto& x : u) top = std::max(top, std::abs(x));
  std::vector<Complex> s(u.size());
  double norm = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    s[k] = u[k] / top;
    norm += std::norm(s[k]);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      FloatMatrix e(n, n);
      e(i, j) = 1.0;
      for (std::size_t slot = 0; slot < dims.size(); ++slot) {
        if (t.slots()[slot] == SlotKind::inert) continue;
        auto img = apply_on_slot(s, dims, slot, slot_derivative(t.slots()[slot], e));
        Complex acc = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) acc += img[k] * std::conj(s[k]);
        m(i, j) += acc;
      }
    }
  return m / norm;
}

}  // namespace

RepVector::RepVector(ExactPolynomial p) : v_(std::move(p)) { require_nonzero(std::get<ExactPolynomial>(v_), "pair vector"); }
RepVector::RepVector(FloatPolynomial p) : v_(std::move(p)) { require_nonzero(std::get<FloatPolynomial>(v_), "pair vector"); }
RepVector::RepVector(ExactTensor t) : v_(std::move(t)) { require(!std::get<ExactTensor>(v_).is_zero(), "pair vector: zero tensor"); }
RepVector::RepVector(FloatTensor t) : v_(std::move(t)) { require(!std::get<FloatTensor>(v_).is_zero(), "pair vector: zero tensor"); }

int RepVector::group_size() const {
  return std::visit(overloaded{[](const ExactPolynomial& p) { return p.shape().group_size(); },
                               [](const FloatPolynomial& p) { return p.shape().group_size(); },
                               [](const auto& t) { return t.group_size(); }},
                    v_);
}

int RepVector::rep_degree() const {
  return std::visit(overloaded{[](const ExactPolynomial& p) { return stabpair::rep_degree(p.shape(), p.degree()); },
                               [](const FloatPolynomial& p) { return stabpair::rep_degree(p.shape(), p.degree()); },
                               [](const auto& t) {
                                 const auto& [idx, c] = *t.coords().begin();
                                 return static_cast<int>(WeightCharacter(t.character(idx)).total());
                               }},
                    v_);
}

std::set<WeightCharacter> RepVector::support(double rel_tol) const {
  return std::visit(overloaded{[](const ExactPolynomial& p) { return stabpair::support(p); },
                               [](const ExactTensor& t) { return stabpair::support(t); },
                               [&](const auto& x) { return stabpair::support(x, rel_tol); }},
                    v_);
}

LatticePolytope RepVector::polytope(double rel_tol) const { return polytope_of(group_size(), support(rel_tol)); }

RepVector RepVector::to_float() const {
  return std::visit([](const auto& x) { return RepVector(stabpair::to_float(x)); }, v_);
}

RepVector RepVector::act(const FloatMatrix& sigma) const {
  return std::visit(
      overloaded{[&](const ExactPolynomial& p) { return RepVector(stabpair::act(sigma, stabpair::to_float(p))); },
                 [&](const FloatPolynomial& p) { return RepVector(stabpair::act(sigma, p)); },
                 [&](const ExactTensor& t) { return RepVector(stabpair::act(sigma, stabpair::to_float(t))); },
                 [&](const FloatTensor& t) { return RepVector(stabpair::act(sigma, t)); }},
      v_);
}

RepVector RepVector::act_exact(const ExactMatrix& sigma) const {
  return std::visit(overloaded{[&](const ExactPolynomial& p) { return RepVector(stabpair::act(sigma, p)); },
                               [&](const ExactTensor& t) { return RepVector(stabpair::act(sigma, t)); },
                               [](const auto&) -> RepVector { throw PreconditionError("exact action on float data"); }},
                    v_);
}

double RepVector::log_norm_sq(const FloatMatrix& sigma) const {
  return std::visit(
      overloaded{[&](const ExactPolynomial& p) { return log_l2_norm_sq(stabpair::act(sigma, stabpair::to_float(p))); },
                 [&](const FloatPolynomial& p) { return log_l2_norm_sq(stabpair::act(sigma, p)); },
                 [&](const ExactTensor& t) { return log_hermitian_norm_sq(act_dense(sigma, stabpair::to_float(t))); },
                 [&](const FloatTensor& t) { return log_hermitian_norm_sq(act_dense(sigma, t)); }},
      v_);
}

Eigen::MatrixXcd RepVector::moment(const FloatMatrix& sigma) const {
  return std::visit(
      overloaded{[&](const ExactPolynomial& p) { return l2_moment(stabpair::act(sigma, stabpair::to_float(p))); },
                 [&](const FloatPolynomial& p) { return l2_moment(stabpair::act(sigma, p)); },
                 [&](const ExactTensor& t) {
                   auto ft = stabpair::to_float(t);
                   return tensor_moment(ft, act_dense(sigma, ft));
                 },
                 [&](const FloatTensor& t) { return tensor_moment(t, act_dense(sigma, t)); }},
      v_);
}

}  // namespace stabpair
