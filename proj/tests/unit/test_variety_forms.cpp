#include <doctest.h>

#include "helpers.hpp"
#include "stabpair/forms/x_pair.hpp"

using namespace stabpair;
using namespace testing_support;

namespace {

const VariableShape kBinary = VariableShape::vector(2);

ExactPolynomial bf(std::initializer_list<long> coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  ExactPolynomial p(kBinary, d);
  int k = 0;
  for (long c : coeffs) {
    p.add_term({d - k, k}, GaussianRational(c));
    ++k;
  }
  return p;
}

std::vector<GaussianRational> flatten(const ExactMatrix& a) { return a.data(); }

ExactMatrix random_int_matrix(int rows, int cols, std::mt19937_64& rng, int range = 4) {
  ExactMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = small_int(rng, -range, range);
  return m;
}

ExactPolynomial conic_hypersurface() {
  ExactPolynomial f(VariableShape::vector(3), 2);
  f.add_term({1, 0, 1}, GaussianRational(1));
  f.add_term({0, 2, 0}, GaussianRational(-1));
  return f;
}

}  // namespace

TEST_CASE("curve validation") {
  CHECK_THROWS_AS(RationalCurve({bf({1, 0, 0}), bf({0, 1, 0})}), PreconditionError);  // common root [0:1]
  CHECK_THROWS_AS(RationalCurve({bf({1, 0}), bf({2, 0})}), PreconditionError);
  CHECK_THROWS_AS(RationalCurve({bf({1, 0, 0}), bf({0, 1})}), PreconditionError);
  CHECK_THROWS_AS(RationalCurve({bf({1, 0, 0})}), DimensionError);
  auto conic = RationalCurve::rational_normal(2);
  CHECK(conic.ambient() == 2);
  CHECK(conic.degree() == 2);
  RationalCurve line({bf({1, 0}), bf({0, 1})});
  CHECK_THROWS_AS(hurwitz_form_curve(line), PreconditionError);
  CHECK_THROWS_AS(build_x_pair(line, {}), PreconditionError);
}

TEST_CASE("conic Chow form examples") {
  auto conic = RationalCurve::rational_normal(2);
  auto r = chow_form_curve(conic);
  CHECK(r.degree() == 4);
  CHECK(r.evaluate({1, 0, 0, 0, 0, 1}) == GaussianRational(1));
  // kernel (0,0,1) is the point gamma(0,1) of the conic
  CHECK(r.evaluate({1, 0, 0, 0, 1, 0}).is_zero());
  ExactMatrix a(2, 3, {1, 0, 0, 0, 0, 1});
  CHECK(chow_form_curve_at(conic, a) == GaussianRational(1));
}

TEST_CASE("Chow form degrees and numeric agreement for rational normal curves") {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 4; ++d) {
    auto c = RationalCurve::rational_normal(d);
    auto r = chow_form_curve(c);
    auto delta = hurwitz_form_curve(c);
    CHECK(r.degree() == 2 * d);
    CHECK(delta.degree() == 2 * d - 2);
    for (int k = 0; k < 3; ++k) {
      auto a = random_int_matrix(2, d + 1, rng);
      CHECK(r.evaluate(flatten(a)) == chow_form_curve_at(c, a));
      auto b = random_int_matrix(1, d + 1, rng).data();
      CHECK(delta.evaluate(b) == hurwitz_form_curve_at(c, b));
    }
  }
}

TEST_CASE("conic Hurwitz form") {
  auto conic = RationalCurve::rational_normal(2);
  auto raw = hurwitz_form_curve(conic);
  ExactPolynomial expected(VariableShape::vector(3), 2);
  expected.add_term({0, 2, 0}, GaussianRational(1));
  expected.add_term({1, 0, 1}, GaussianRational(-4));
  CHECK(raw == -expected);
  auto norm = normalize_form(raw);
  CHECK(norm.form == expected);
  CHECK(norm.factor == GaussianRational(-1));
  CHECK(raw.evaluate({1, 0, 0}).is_zero());
  // tangent lines (t0^2, -2 s0 t0, s0^2) form the dual conic
  for (long s0 = -3; s0 <= 3; ++s0)
    for (long t0 = -3; t0 <= 3; ++t0) {
      if (s0 == 0 && t0 == 0) continue;
      CHECK(raw.evaluate({t0 * t0, -2 * s0 * t0, s0 * s0}).is_zero());
    }
  CHECK(!raw.evaluate({1, 1, 1}).is_zero());
}

TEST_CASE("twisted cubic forms") {
  auto cubic = RationalCurve::rational_normal(3);
  CHECK(chow_form_curve(cubic).degree() == 6);
  auto delta = hurwitz_form_curve(cubic);
  CHECK(delta.degree() == 4);
  // 2d - 2 = n(n+1)d - d mu with n = 1 and d mu = 2
  CHECK(delta.degree() == 1 * 2 * 3 - 2);
  // B . gamma = (s - t)^2 (s + t) has a double root
  CHECK(delta.evaluate({1, -1, -1, 1}).is_zero());
  CHECK(!delta.evaluate({1, 0, 0, 1}).is_zero());
}

TEST_CASE("Chow form vanishes exactly when the kernel meets the curve") {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 3; ++d) {
    auto c = RationalCurve::rational_normal(d);
    auto r = chow_form_curve(c);
    for (int k = 0; k < 5; ++k) {
      // kernel through gamma(s0, t0)
      long s0 = 1 + k, t0 = 2 - k;
      std::vector<GaussianRational> p;
      for (int j = 0; j <= d; ++j) {
        mpz_class v = 1;
        for (int i = 0; i < d - j; ++i) v *= s0;
        for (int i = 0; i < j; ++i) v *= t0;
        p.emplace_back(mpq_class(v));
      }
      auto a = random_int_matrix(2, d + 1, rng);
      GaussianRational pp(0);
      for (const auto& x : p) pp += x * x;
      for (int row = 0; row < 2; ++row) {
        GaussianRational ap(0);
        for (int j = 0; j <= d; ++j) ap += a(row, j) * p[j];
        for (int j = 0; j <= d; ++j) a(row, j) = a(row, j) * pp - ap * p[j];
      }
      CHECK(r.evaluate(flatten(a)).is_zero());
      CHECK(chow_form_curve_at(c, a).is_zero());
      auto generic = random_int_matrix(2, d + 1, rng, 1000);
      CHECK(!r.evaluate(flatten(generic)).is_zero());
    }
  }
}

TEST_CASE("left SL(2) invariance of the Chow form") {
  std::mt19937_64 rng(17);
  auto c = RationalCurve({bf({1, 2, 0}), bf({0, 1, -1}), bf({3, 0, 1}), bf({1, 1, 1})});
  auto r = chow_form_curve(c);
  for (int k = 0; k < 5; ++k) {
    auto g = random_exact_sl(2, rng, 6);
    auto a = random_int_matrix(2, 4, rng);
    CHECK(r.evaluate(flatten(g * a)) == r.evaluate(flatten(a)));
  }
}

TEST_CASE("right equivariance: sigma . R_gamma = R_{sigma gamma}") {
  std::mt19937_64 rng(23);
  auto conic = RationalCurve::rational_normal(2);
  auto r = chow_form_curve(conic);
  auto delta = hurwitz_form_curve(conic);
  for (int k = 0; k < 3; ++k) {
    auto sigma = random_exact_sl(3, rng, 5);
    auto moved = conic.transformed(sigma);
    CHECK(act(sigma, r) == chow_form_curve(moved));
    CHECK(act(sigma, delta) == hurwitz_form_curve(moved));
  }
}

TEST_CASE("hypersurface Chow form") {
  HypersurfaceVariety conic(1, conic_hypersurface());
  auto r = chow_form_hypersurface(conic);
  CHECK(r.degree() == 4);
  CHECK(r.evaluate({1, 0, 0, 0, 1, 0}).is_zero());
  CHECK(r.evaluate({1, 0, 0, 0, 0, 1}) == GaussianRational(-1));
  auto param = chow_form_curve(RationalCurve::rational_normal(2));
  std::mt19937_64 rng(29);
  std::optional<GaussianRational> ratio;
  int compared = 0;
  for (int k = 0; k < 20; ++k) {
    auto a = flatten(random_int_matrix(2, 3, rng));
    auto x = r.evaluate(a), y = param.evaluate(a);
    CHECK(x.is_zero() == y.is_zero());
    if (y.is_zero()) continue;
    if (!ratio) ratio = x / y;
    CHECK(x / y == *ratio);
    ++compared;
  }
  CHECK(compared >= 15);
  CHECK(normalize_form(r).form == normalize_form(param).form);
  CHECK_THROWS_AS(HypersurfaceVariety(1, ExactPolynomial(VariableShape::vector(3), 2)), PreconditionError);
}

TEST_CASE("normalization clears content and fixes the sign") {
  ExactPolynomial p(VariableShape::vector(2), 2);
  p.add_term({2, 0}, GaussianRational(mpq_class(-3, 4)));
  p.add_term({1, 1}, GaussianRational(mpq_class(3, 2), mpq_class(9, 4)));
  p.add_term({0, 2}, GaussianRational(6));
  auto n = normalize_form(p);
  // ascending exponent order puts t^2 first
  CHECK(n.form.coefficient({0, 2}) == GaussianRational(8));
  CHECK(n.form.coefficient({1, 1}) == GaussianRational(2, 3));
  CHECK(n.form.coefficient({2, 0}) == GaussianRational(-1));
  CHECK(n.form == p * n.factor);
  CHECK(normalize_form(p * GaussianRational(mpq_class(-5, 7), 2)).form == n.form);
}

TEST_CASE("variety pairs: degrees, exponents and evaluators") {
  SamplingOptions so;
  so.samples = 4000;
  so.seed = 3;
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int d = 2; d <= 5; ++d) {
    auto xp = build_x_pair(RationalCurve::rational_normal(d), so);
    CHECK(xp.deg_r == 2 * d);
    CHECK(xp.deg_delta == 2 * d - 2);
    CHECK(xp.r_power() == xp.deg_delta);
    CHECK(xp.delta_power() == xp.deg_r);
    REQUIRE(xp.r_form);
    REQUIRE(xp.delta_form);
    CHECK(xp.r_form->degree() == xp.deg_r);
    CHECK(xp.delta_form->degree() == xp.deg_delta);
    PolynomialEvaluator r(to_float(*xp.r_form)), delta(to_float(*xp.delta_form));
    for (int k = 0; k < 4; ++k) {
      std::vector<Complex> a(2 * (d + 1));
      for (auto& x : a) x = Complex(g(rng), g(rng));
      Eigen::MatrixXcd d1, d2;
      CHECK(xp.r_eval->log_abs(a.data(), &d1) == doctest::Approx(r.log_abs(a.data(), &d2)).epsilon(1e-9));
      CHECK((d1 - d2).norm() < 1e-7 * (1.0 + d2.norm()));
      CHECK(xp.delta_eval->log_abs(a.data()) == doctest::Approx(delta.log_abs(a.data())).epsilon(1e-9));
    }
    CHECK(std::isfinite(xp.mahler_r.log_value));
    CHECK(xp.mahler_r.samples == 4000);
  }
  auto conic = build_x_pair(RationalCurve::rational_normal(2), so);
  CHECK(conic.deg_r == 4);
  CHECK(conic.deg_delta == 2);
  CHECK(conic.r_power() == 2);
  CHECK(conic.delta_power() == 4);
  auto big = build_x_pair(RationalCurve::rational_normal(6), so);
  CHECK(!big.r_form);
  CHECK(big.has_delta());
  CHECK(!big.note.empty());
  HypersurfaceVariety h(1, conic_hypersurface());
  auto hp = build_x_pair(h, so);
  CHECK(hp.deg_r == 4);
  CHECK(!hp.has_delta());
  CHECK_THROWS_AS(hp.require_delta(), PreconditionError);
  CHECK(*hp.r_form == *conic.r_form);
}
