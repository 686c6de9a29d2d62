#include "stabpair/pairs/pair.hpp"

#include "stabpair/core/elimination.hpp"

#include <algorithm>

namespace stabpair {

Pair::Pair(RepVector v, RepVector w, std::string v_label, std::string w_label)
    : v_(std::move(v)), w_(std::move(w)), v_label_(std::move(v_label)), w_label_(std::move(w_label)) {
  require_dims(v_.group_size() == w_.group_size(), "pair sides act through different groups");
}

namespace {

double tolerance(const Pair& p) { return p.is_exact() ? 0.0 : kSupportTolerance; }

TorusResult from_containment(const ContainmentResult& c) {
  TorusResult r;
  r.semistable = c.contained;
  r.witness = c.witness;
  return r;
}

long min_entry(const OnePSG& lambda) {
  return *std::min_element(lambda.exponents().begin(), lambda.exponents().end());
}

}  // namespace

TorusResult torus_semistable(const Pair& p) {
  const double tol = tolerance(p);
  return from_containment(contains(p.v().polytope(tol), p.w().polytope(tol)));
}

TorusResult torus_semistable(const TensoredPair& p) {
  require(p.m >= 1, "tensored pair needs m >= 1");
  require(p.q >= 0, "tensored pair needs q >= 0");
  const double tol = tolerance(p.base);
  const int n = p.base.group_size();
  LatticePolytope inner = minkowski_sum(scale(standard_simplex(n), p.q), scale(p.base.v().polytope(tol), p.m));
  LatticePolytope outer = scale(p.base.w().polytope(tol), p.m + 1);
  return from_containment(contains(inner, outer));
}

long witness_margin(const OnePSG& lambda, const Pair& p) {
  const double tol = tolerance(p);
  return p.w().polytope(tol).min_pairing(lambda) - p.v().polytope(tol).min_pairing(lambda);
}

long witness_margin(const OnePSG& lambda, const TensoredPair& p) {
  const double tol = tolerance(p.base);
  return (p.m + 1) * p.base.w().polytope(tol).min_pairing(lambda) -
         (p.q * min_entry(lambda) + p.m * p.base.v().polytope(tol).min_pairing(lambda));
}

TensoredPair build_stable_test_pair(const Pair& p, int m) {
  require(m >= 1, "build_stable_test_pair needs m >= 1");
  return TensoredPair{p, m, p.v().rep_degree()};
}

std::vector<ExactMatrix> root_aligned_conjugators(const Pair& p) {
  std::vector<ExactMatrix> out;
  if (p.group_size() != 2) return out;
  std::vector<std::pair<mpz_class, mpz_class>> roots;
  for (const RepVector* side : {&p.w(), &p.v()}) {
    const auto* poly = std::get_if<ExactPolynomial>(&side->storage());
    if (!poly || poly->shape() != VariableShape::vector(2)) continue;
    for (const auto& r : rational_roots(binary_form_of(*poly)))
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  for (auto [a, b] : roots) {
    mpz_class g = gcd(a, b);
    a /= g;
    b /= g;
    // s b + t a = 1 gives [[s, -t], [a, b]] with determinant 1.
    mpz_class gg, s, t;
    mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    if (gg < 0) {
      s = -s;
      t = -t;
    }
    ExactMatrix m(2, 2);
    m(0, 0) = GaussianRational(mpq_class(s));
    m(0, 1) = GaussianRational(mpq_class(-t));
    m(1, 0) = GaussianRational(mpq_class(a));
    m(1, 1) = GaussianRational(mpq_class(b));
    out.push_back(m);
  }
  return out;
}

namespace {

template <class P>
P act_on(const P& p, const FloatMatrix& sigma) {
  if constexpr (std::is_same_v<P, Pair>)
    return p.act(sigma);
  else
    return TensoredPair{p.base.act(sigma), p.m, p.q};
}

template <class P>
P act_exact_on(const P& p, const ExactMatrix& sigma) {
  if constexpr (std::is_same_v<P, Pair>)
    return p.act_exact(sigma);
  else
    return TensoredPair{p.base.act_exact(sigma), p.m, p.q};
}

template <class P>
ProbeResult probe(const P& p, const Pair& base, int trials, std::uint64_t seed) {
  require(trials >= 1, "probe needs trials >= 1");
  const int n = base.group_size();
  std::vector<ExactMatrix> structured{ExactMatrix::identity(n)};
  if (base.is_exact())
    for (auto& m : root_aligned_conjugators(base)) structured.push_back(std::move(m));
  ProbeResult out;
  for (int trial = 1; trial <= trials; ++trial) {
    out.trials_run = trial;
    TorusResult r;
    FloatMatrix sigma;
    std::string kind;
    if (trial <= static_cast<int>(structured.size())) {
      const ExactMatrix& e = structured[trial - 1];
      kind = trial == 1 ? "identity" : "root-aligned";
      sigma = to_float(e);
      r = torus_semistable(act_exact_on(p, e));
    } else {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
      sigma = random_special_linear(n, rng);
      kind = "random";
      r = torus_semistable(act_on(p, sigma));
    }
    if (!r.semistable) {
      out.passed = false;
      out.failing_trial = trial;
      out.conjugator = sigma;
      out.conjugator_kind = kind;
      out.witness = r.witness;
      return out;
    }
  }
  return out;
}

}  // namespace

ProbeResult randomized_torus_probe(const Pair& p, int trials, std::uint64_t seed) { return probe(p, p, trials, seed); }

ProbeResult randomized_torus_probe(const TensoredPair& p, int trials, std::uint64_t seed) {
  return probe(p, p.base, trials, seed);
}

}  // namespace stabpair
