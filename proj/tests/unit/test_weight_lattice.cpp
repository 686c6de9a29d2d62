#include <doctest.h>

#include "helpers.hpp"
#include "stabpair/weights/support.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace stabpair;
using namespace testing_support;

namespace {

ExactPolynomial var(VariableShape sh, int i) { return ExactPolynomial::variable(sh, i); }

ExactPolynomial conic_discriminant() {
  auto sh = VariableShape::matrix(1, 3);
  return var(sh, 1) * var(sh, 1) - var(sh, 0) * var(sh, 2) * GaussianRational(4);
}

ExactTensor blowup_v() {
  ExactTensor t(3, {SlotKind::wedge2, SlotKind::wedge2});
  int w = wedge_index(0, 1, 3);
  t.set({w, w}, GaussianRational(1));
  return t;
}

ExactTensor blowup_w() {
  ExactTensor t(3, {SlotKind::vector, SlotKind::vector, SlotKind::wedge2});
  int w = wedge_index(0, 1, 3);
  t.set({0, 1, w}, GaussianRational(1));
  t.set({1, 0, w}, GaussianRational(1));
  return t;
}

std::set<std::vector<long>> vertex_set(const LatticePolytope& p) {
  std::set<std::vector<long>> s;
  for (const auto& v : p.vertices()) s.insert(v.scaled_projection());
  return s;
}

// Andrew's monotone chain on the first two scaled coordinates (a linear chart of the N = 2 quotient).
std::set<std::vector<long>> hull_2d(const std::vector<std::vector<long>>& pts) {
  std::vector<std::vector<long>> p(pts);
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() <= 2) return {p.begin(), p.end()};
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::vector<long>> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return {h.begin(), h.end()};
}

std::vector<std::vector<long>> lambdas_in_box(int n, int bound) {
  std::vector<std::vector<long>> out;
  std::vector<long> l(n, 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n - 1) {
      long s = 0;
      for (int j = 0; j < n - 1; ++j) s += l[j];
      l[n - 1] = -s;
      if (std::labs(l[n - 1]) <= bound && std::any_of(l.begin(), l.end(), [](long x) { return x != 0; }))
        out.push_back(l);
      return;
    }
    for (long v = -bound; v <= bound; ++v) {
      l[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

LatticePolytope random_polytope(int n, std::mt19937_64& rng, int count, int total) {
  std::vector<WeightCharacter> pts;
  std::uniform_int_distribution<int> u(0, n - 1);
  for (int c = 0; c < count; ++c) {
    std::vector<long> a(n, 0);
    for (int k = 0; k < total; ++k) a[u(rng)]++;
    pts.emplace_back(a);
  }
  return LatticePolytope(n, pts);
}

}  // namespace

TEST_CASE("support: examples") {
  auto s = support(conic_discriminant());
  CHECK(s == std::set<WeightCharacter>{WeightCharacter({0, 2, 0}), WeightCharacter({1, 0, 1})});
  auto sh = VariableShape::vector(4);
  CHECK(support(var(sh, 0).pow(3)) == std::set<WeightCharacter>{WeightCharacter({3, 0, 0, 0})});
  CHECK(support(blowup_v()) == std::set<WeightCharacter>{WeightCharacter({2, 2, 0})});
  CHECK(support(blowup_w()) == std::set<WeightCharacter>{WeightCharacter({2, 2, 0})});
  CHECK_THROWS_AS(support(ExactPolynomial(sh, 2)), PreconditionError);
}

TEST_CASE("weight_polytope: examples") {
  auto q = weight_polytope(identity_tensor(4));
  CHECK(vertex_set(q) == vertex_set(standard_simplex(4)));
  CHECK(q.vertices().size() == 4);
  auto sh = VariableShape::vector(2);
  CHECK(weight_polytope(var(sh, 0).pow(2)).vertices().size() == 1);
  auto seg = weight_polytope(conic_discriminant());
  CHECK(seg.vertices().size() == 2);
}

TEST_CASE("psg_weight: examples") {
  auto sh = VariableShape::vector(2);
  CHECK(psg_weight(OnePSG({1, -1}), var(sh, 0).pow(2)) == 2);
  CHECK(psg_weight(OnePSG({1, 0, -1}), conic_discriminant()) == 0);
  CHECK(psg_weight(OnePSG({1, -1}), var(sh, 0) + var(sh, 1)) == -1);
}

TEST_CASE("contains: examples") {
  LatticePolytope a(3, {WeightCharacter({2, 2, 0})});
  CHECK(contains(a, a).contained);
  LatticePolytope x(2, {WeightCharacter({1, 0})}), x2(2, {WeightCharacter({2, 0})});
  auto r = contains(x, x2);
  CHECK(!r.contained);
  REQUIRE(r.witness);
  CHECK(r.witness->exponents() == std::vector<long>{1, -1});
  std::mt19937_64 rng(4);
  auto p = random_polytope(3, rng, 6, 4);
  CHECK(contains(p, p).contained);
  CHECK_THROWS_AS(contains(x, a), DimensionError);
}

TEST_CASE("vertices agree with an independent planar hull") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_polytope(3, rng, 3 + trial % 8, 2 + trial % 5);
    std::vector<std::vector<long>> pts;
    for (const auto& c : p.points()) {
      auto s = c.scaled_projection();
      pts.push_back({s[0], s[1]});
    }
    std::set<std::vector<long>> mine;
    for (const auto& v : p.vertices()) {
      auto s = v.scaled_projection();
      mine.insert({s[0], s[1]});
    }
    CHECK(mine == hull_2d(pts));
  }
}

TEST_CASE("psg_weight is attained on vertices") {
  std::mt19937_64 rng(12);
  auto lams = lambdas_in_box(3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = random_exact(VariableShape::vector(3), 1 + trial % 4, rng);
    auto poly = weight_polytope(e);
    for (std::size_t k = 0; k < lams.size(); k += 7) {
      OnePSG l(lams[k]);
      CHECK(psg_weight(l, e) == poly.min_pairing(l));
    }
  }
}

TEST_CASE("minkowski_sum and scale: examples") {
  std::mt19937_64 rng(6);
  auto p = random_polytope(3, rng, 6, 3);
  CHECK(same_polytope(minkowski_sum(p, origin_polytope(3)), p));
  auto q = standard_simplex(4);
  CHECK(same_polytope(minkowski_sum(q, q), scale(q, 2)));
}

TEST_CASE("additivity: weights and polytopes of tensor products match brute force") {
  std::mt19937_64 rng(21);
  auto lams = lambdas_in_box(3, 2);
  for (int trial = 0; trial < 6; ++trial) {
    auto e = random_exact(VariableShape::vector(3), 1 + trial % 3, rng);
    auto f = random_exact(VariableShape::vector(3), 1 + (trial + 1) % 3, rng);
    // Brute-force support of e (x) f: every pair of monomials.
    std::vector<WeightCharacter> pts;
    for (const auto& a : support(e))
      for (const auto& b : support(f)) {
        auto r = a.raw;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.raw[i];
        pts.emplace_back(r);
      }
    LatticePolytope brute(3, pts);
    CHECK(same_polytope(brute, minkowski_sum(weight_polytope(e), weight_polytope(f))));
    for (std::size_t k = 0; k < lams.size(); k += 3) {
      OnePSG l(lams[k]);
      CHECK(brute.min_pairing(l) == psg_weight(l, e) + psg_weight(l, f));
    }
  }
}

TEST_CASE("q Q_N + m N(v) equals the brute-force support of I^q (x) v^m") {
  std::mt19937_64 rng(31);
  for (int n : {2, 3})
    for (int q = 0; q <= 2; ++q)
      for (int m = 1; m <= 2; ++m) {
        auto v = random_exact(VariableShape::vector(n), 2, rng);
        // Expand the tensor product index by index.
        const auto ident = identity_tensor(n);
        std::vector<std::vector<long>> chars{std::vector<long>(n, 0)};
        for (int k = 0; k < q; ++k) {
          std::vector<std::vector<long>> next;
          for (const auto& c : chars)
            for (const auto& [idx, coeff] : ident.coords()) {
              auto d = c;
              auto ch = ident.character(idx);
              for (int i = 0; i < n; ++i) d[i] += ch[i];
              next.push_back(d);
            }
          chars = next;
        }
        for (int k = 0; k < m; ++k) {
          std::vector<std::vector<long>> next;
          for (const auto& c : chars)
            for (const auto& [e, coeff] : v.terms()) {
              auto d = c;
              auto ch = v.column_degrees(e);
              for (int i = 0; i < n; ++i) d[i] += ch[i];
              next.push_back(d);
            }
          chars = next;
        }
        std::vector<WeightCharacter> pts(chars.begin(), chars.end());
        LatticePolytope brute(n, pts);
        auto fast = minkowski_sum(scale(standard_simplex(n), q), scale(weight_polytope(v), m));
        CHECK(same_polytope(brute, fast));
      }
}

TEST_CASE("Weyl equivariance of supports and containment") {
  std::mt19937_64 rng(14);
  std::vector<int> perm{2, 0, 1};
  auto permute = [&](const LatticePolytope& p) {
    std::vector<WeightCharacter> pts;
    for (const auto& c : p.points()) {
      std::vector<long> r(3);
      for (int i = 0; i < 3; ++i) r[perm[i]] = c.raw[i];
      pts.emplace_back(r);
    }
    return LatticePolytope(3, pts);
  };
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_polytope(3, rng, 3, 3), b = random_polytope(3, rng, 5, 3);
    CHECK(contains(a, b).contained == contains(permute(a), permute(b)).contained);
  }
  // Permuting variables of a polynomial permutes its support.
  auto e = random_exact(VariableShape::vector(3), 3, rng);
  ExactMatrix p(3, 3);
  for (int i = 0; i < 3; ++i) p(perm[i], i) = GaussianRational(1);
  REQUIRE(p.determinant() == GaussianRational(1));
  auto pe = act(p, e);
  CHECK(same_polytope(weight_polytope(pe), permute(weight_polytope(e))));
}

TEST_CASE("containment agrees with the weight inequality over all small 1-PSGs") {
  std::mt19937_64 rng(19);
  for (int n : {2, 3}) {
    auto lams = lambdas_in_box(n, n == 2 ? 1 : 6);
    for (int trial = 0; trial < 40; ++trial) {
      auto inner = random_polytope(n, rng, 1 + trial % 3, 2 + trial % 3);
      auto outer = random_polytope(n, rng, 1 + trial % 5, 2 + (trial / 2) % 3);
      auto r = contains(inner, outer);
      bool all_ok = true;
      for (const auto& l : lams) {
        OnePSG psg(l);
        // sum(l) = 0, so raw and projected pairings coincide even across total degrees.
        if (outer.min_pairing(psg) > inner.min_pairing(psg)) all_ok = false;
      }
      CHECK(r.contained == all_ok);
      if (!r.contained) CHECK(outer.min_pairing(*r.witness) > inner.min_pairing(*r.witness));
    }
  }
}

TEST_CASE("limit consistency: log-norm slope along lambda(t) equals psg_weight") {
  std::mt19937_64 rng(27);
  auto lams = lambdas_in_box(3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = random_float(VariableShape::vector(3), 1 + trial % 4, rng);
    OnePSG l(lams[(trial * 37) % lams.size()]);
    auto log_norm = [&](double t) {
      auto et = act(l.at(t), e);
      double s = 0.0;
      for (const auto& [x, c] : et.terms()) s += std::norm(c);
      return std::log(s);
    };
    double slope = (log_norm(1e-3) - log_norm(1e-2)) / (2.0 * std::log(1e-3) - 2.0 * std::log(1e-2));
    CHECK(std::abs(slope - psg_weight(l, e)) < 0.05);
  }
}

TEST_CASE("tensor action: wedge characters, exact vs float, composition") {
  std::mt19937_64 rng(33);
  auto s = random_exact_sl(3, rng), t = random_exact_sl(3, rng);
  auto w = blowup_w();
  CHECK(act(s, act(t, w)) == act(s * t, w));
  auto fw = act(to_float(s), to_float(w));
  auto ew = to_float(act(s, w));
  for (const auto& [i, c] : ew.coords()) {
    auto it = fw.coords().find(i);
    REQUIRE(it != fw.coords().end());
    CHECK(std::abs(it->second - c) < 1e-10);
  }
  // Torus acts on e_i ^ e_j by t_i t_j.
  auto d = ExactMatrix::diagonal({GaussianRational(2), GaussianRational(3), GaussianRational(mpq_class(1, 6))});
  auto dv = act(d, blowup_v());
  CHECK(dv.coords().begin()->second == GaussianRational(36));
  CHECK(rep_degree(VariableShape::matrix(2, 3), 4) == 4);
  CHECK(rep_degree(VariableShape::vector(3), 0) == 0);
}
