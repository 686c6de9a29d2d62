#include "stabpair/forms/forms.hpp"

#include <random>

namespace stabpair {

namespace {

BinaryForm<GaussianRational> combination(const std::vector<BinaryForm<GaussianRational>>& forms,
                                         const std::vector<GaussianRational>& c) {
  BinaryForm<GaussianRational> out;
  out.coeffs.assign(forms.front().coeffs.size(), GaussianRational(0));
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (c[j].is_zero()) continue;
    for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] += c[j] * forms[j].coeffs[k];
  }
  return out;
}

}  // namespace

RationalCurve::RationalCurve(std::vector<ExactPolynomial> gamma) : gamma_(std::move(gamma)) {
  require_dims(gamma_.size() >= 2, "a curve needs at least two components");
  degree_ = gamma_.front().degree();
  require(degree_ >= 1, "curve degree must be positive");
  bool any = false;
  for (const auto& g : gamma_) {
    require_dims(g.shape() == VariableShape::vector(2), "curve components are binary forms in (s, t)");
    if (g.is_zero()) continue;
    require(g.degree() == degree_, "curve components must share one degree");
    any = true;
  }
  require(any, "all curve components vanish");
  for (const auto& g : gamma_) {
    BinaryForm<GaussianRational> f;
    for (int k = 0; k <= degree_; ++k) f.coeffs.push_back(g.coefficient({degree_ - k, k}));
    binary_.push_back(f);
    std::vector<Complex> fc;
    for (const auto& c : f.coeffs) fc.push_back(c.to_complex());
    float_coeffs_.push_back(fc);
  }
  // A common root of all components is a root of any two combinations of them, so one
  // nonvanishing resultant of two combinations certifies that there is none.
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<GaussianRational> a, b;
    for (std::size_t j = 0; j < gamma_.size(); ++j) {
      a.emplace_back(u(rng));
      b.emplace_back(u(rng));
    }
    auto f = combination(binary_, a), g = combination(binary_, b);
    if (f.is_zero() || g.is_zero()) continue;
    if (!sylvester_resultant(f, g).is_zero()) return;
  }
  throw PreconditionError("degenerate curve: components share a projective root or span one form");
}

RationalCurve RationalCurve::rational_normal(int d) {
  require(d >= 1, "rational normal curve needs d >= 1");
  std::vector<ExactPolynomial> g;
  for (int k = 0; k <= d; ++k) g.push_back(ExactPolynomial::monomial(VariableShape::vector(2), {d - k, k}));
  return RationalCurve(g);
}

RationalCurve RationalCurve::transformed(const ExactMatrix& sigma) const {
  const int n = ambient() + 1;
  require_dims(sigma.rows() == n && sigma.cols() == n, "transform does not match the ambient space");
  std::vector<ExactPolynomial> out;
  for (int i = 0; i < n; ++i) {
    ExactPolynomial p(VariableShape::vector(2), degree_);
    for (int j = 0; j < n; ++j)
      if (!sigma(i, j).is_zero()) p += gamma_[j] * sigma(i, j);
    out.push_back(p);
  }
  return RationalCurve(out);
}

std::array<std::vector<Complex>, 3> RationalCurve::chart_jet(Complex z, bool swap) const {
  const std::size_t n = gamma_.size();
  std::array<std::vector<Complex>, 3> jet;
  for (auto& v : jet) v.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& c = float_coeffs_[j];
    // Horner for value, first and second derivative together.
    Complex v = 0.0, dv = 0.0, d2v = 0.0;
    for (int k = 0; k <= degree_; ++k) {
      const Complex coef = swap ? c[degree_ - k] : c[k];
      d2v = d2v * z + 2.0 * dv;
      dv = dv * z + v;
      v = v * z + coef;
    }
    jet[0][j] = v;
    jet[1][j] = dv;
    jet[2][j] = d2v;
  }
  return jet;
}

HypersurfaceVariety::HypersurfaceVariety(int dim, ExactPolynomial form) : n(dim), F(std::move(form)) {
  require_dims(n >= 1, "hypersurface dimension must be positive");
  require_dims(F.shape() == VariableShape::vector(n + 2), "hypersurface form needs n + 2 variables");
  require_nonzero(F, "hypersurface");
  require(F.degree() >= 1, "hypersurface form must have positive degree");
}

namespace {

void require_symbolic(const RationalCurve& c) {
  if (!c.within_symbolic_cap())
    throw PreconditionError("curve beyond the symbolic expansion cap (d <= 5, N <= 5); use numeric evaluation");
}

BinaryForm<ExactPolynomial> row_form(const RationalCurve& c, VariableShape shape, int row) {
  BinaryForm<ExactPolynomial> f;
  const int n = c.ambient() + 1;
  for (int k = 0; k <= c.degree(); ++k) {
    ExactPolynomial p(shape, 1);
    for (int j = 0; j < n; ++j) {
      const auto& coef = c.binary()[j].coeffs[k];
      if (!coef.is_zero()) p += ExactPolynomial::variable(shape, shape.index(row, j), coef);
    }
    f.coeffs.push_back(p);
  }
  return f;
}

void certify(const ExactPolynomial& p, int expected, const char* what) {
  if (p.is_zero() || p.degree() != expected)
    throw PreconditionError(std::string("degenerate curve: ") + what + " has the wrong degree");
}

}  // namespace

ExactPolynomial chow_form_curve(const RationalCurve& c) {
  require_symbolic(c);
  auto shape = VariableShape::matrix(2, c.ambient() + 1);
  auto r = sylvester_resultant(row_form(c, shape, 0), row_form(c, shape, 1));
  certify(r, 2 * c.degree(), "Chow form");
  return r;
}

ExactPolynomial hurwitz_form_curve(const RationalCurve& c) {
  if (c.degree() < 2) throw PreconditionError("Hurwitz form needs a curve of degree >= 2");
  require_symbolic(c);
  auto shape = VariableShape::vector(c.ambient() + 1);
  auto delta = binary_discriminant(row_form(c, shape, 0));
  certify(delta, 2 * c.degree() - 2, "Hurwitz form");
  return delta;
}

ExactPolynomial chow_form_hypersurface(const HypersurfaceVariety& h) {
  const int rows = h.n + 1, cols = h.n + 2;
  auto shape = VariableShape::matrix(rows, cols);
  RingMatrix<ExactPolynomial> a(rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a[r].push_back(ExactPolynomial::variable(shape, shape.index(r, c)));
  auto minors = maximal_minors(a);
  std::vector<std::vector<ExactPolynomial>> powers(cols);
  for (int j = 0; j < cols; ++j) {
    powers[j].push_back(ExactPolynomial::constant(shape, GaussianRational(1)));
    for (int k = 1; k <= h.F.degree(); ++k) powers[j].push_back(powers[j].back() * minors[j]);
  }
  ExactPolynomial out(shape, h.F.degree() * rows);
  for (const auto& [e, coef] : h.F.terms()) {
    ExactPolynomial term = ExactPolynomial::constant(shape, coef);
    for (int j = 0; j < cols; ++j)
      if (e[j]) term *= powers[j][e[j]];
    out += term;
  }
  return out;
}

GaussianRational chow_form_curve_at(const RationalCurve& c, const ExactMatrix& a) {
  const int n = c.ambient() + 1;
  require_dims(a.rows() == 2 && a.cols() == n, "Chow form takes 2 x (N+1) matrices");
  auto f = combination(c.binary(), {a.data().begin(), a.data().begin() + n});
  auto g = combination(c.binary(), {a.data().begin() + n, a.data().end()});
  if (f.is_zero() || g.is_zero()) return GaussianRational(0);
  return sylvester_resultant(f, g);
}

GaussianRational hurwitz_form_curve_at(const RationalCurve& c, const std::vector<GaussianRational>& b) {
  if (c.degree() < 2) throw PreconditionError("Hurwitz form needs a curve of degree >= 2");
  require_dims(static_cast<int>(b.size()) == c.ambient() + 1, "Hurwitz form takes row vectors of length N+1");
  auto f = combination(c.binary(), b);
  if (f.is_zero()) return GaussianRational(0);
  return binary_discriminant(f);
}

NormalizedForm normalize_form(const ExactPolynomial& p) {
  require_nonzero(p, "normalize_form");
  GaussianRational factor = GaussianRational(1) / p.terms().begin()->second;
  mpz_class den = 1;
  for (const auto& [e, c] : p.terms()) {
    GaussianRational x = c * factor;
    for (const mpq_class* q : {&x.real(), &x.imag()}) den = lcm(den, mpz_class(q->get_den()));
  }
  mpz_class content = 0;
  for (const auto& [e, c] : p.terms()) {
    GaussianRational x = c * factor * GaussianRational(mpq_class(den));
    for (const mpq_class* q : {&x.real(), &x.imag()}) content = gcd(content, mpz_class(q->get_num()));
  }
  factor *= GaussianRational(mpq_class(den, content));
  return {p * factor, factor};
}

std::vector<Eigen::MatrixXcd> chow_pencil(const RationalCurve& c) {
  const int n = c.ambient() + 1, d = c.degree();
  std::vector<Eigen::MatrixXcd> out(2 * n, Eigen::MatrixXcd::Zero(2 * d, 2 * d));
  for (int r = 0; r < 2; ++r)
    for (int j = 0; j < n; ++j) {
      const auto& coef = c.binary()[j].coeffs;
      for (int i = 0; i < d; ++i)
        for (int k = 0; k <= d; ++k) out[r * n + j](r * d + i, i + k) = coef[k].to_complex();
    }
  return out;
}

std::vector<Eigen::MatrixXcd> hurwitz_pencil(const RationalCurve& c) {
  const int n = c.ambient() + 1, d = c.degree();
  require(d >= 2, "Hurwitz form needs a curve of degree >= 2");
  const int m = 2 * d - 2;
  std::vector<Eigen::MatrixXcd> out(n, Eigen::MatrixXcd::Zero(m, m));
  for (int j = 0; j < n; ++j) {
    const auto& coef = c.binary()[j].coeffs;
    for (int i = 0; i < d - 1; ++i)
      for (int k = 0; k < d; ++k) {
        out[j](i, i + k) = coef[k].to_complex() * static_cast<double>(d - k);
        out[j](d - 1 + i, i + k) = coef[k + 1].to_complex() * static_cast<double>(k + 1);
      }
  }
  return out;
}

}  // namespace stabpair
