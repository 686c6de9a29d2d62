#include "stabpair/weights/lattice.hpp"

#include "stabpair/weights/exact_lp.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace stabpair {

long WeightCharacter::total() const {
  long s = 0;
  for (long x : raw) s += x;
  return s;
}

std::vector<mpq_class> WeightCharacter::projected() const {
  mpq_class mean(total(), size());
  mean.canonicalize();
  std::vector<mpq_class> out;
  for (long x : raw) out.emplace_back(mpq_class(x) - mean);
  return out;
}

std::vector<long> WeightCharacter::scaled_projection() const {
  std::vector<long> out;
  const long t = total();
  for (long x : raw) out.push_back(size() * x - t);
  return out;
}

LatticePolytope::LatticePolytope(int n_plus_1, std::vector<WeightCharacter> points)
    : n_(n_plus_1), cache_(std::make_shared<Cache>()) {
  require_dims(n_plus_1 >= 2, "polytope needs N >= 1");
  require(!points.empty(), "empty polytope");
  std::set<std::vector<long>> seen;
  std::sort(points.begin(), points.end());
  for (auto& p : points) {
    require_dims(p.size() == n_plus_1, "character length mismatch");
    if (seen.insert(p.scaled_projection()).second) points_.push_back(std::move(p));
  }
}

const std::vector<WeightCharacter>& LatticePolytope::vertices() const {
  std::call_once(cache_->once, [this] {
    std::vector<std::vector<long>> scaled;
    for (const auto& p : points_) scaled.push_back(p.scaled_projection());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      std::vector<std::vector<long>> others;
      for (std::size_t j = 0; j < points_.size(); ++j)
        if (j != i) others.push_back(scaled[j]);
      if (others.empty() || separate_point(scaled[i], others, nullptr)) cache_->vertices.push_back(points_[i]);
    }
  });
  return cache_->vertices;
}

long LatticePolytope::min_pairing(const OnePSG& lambda) const {
  require_dims(lambda.size() == n_, "subgroup size mismatch");
  long best = std::numeric_limits<long>::max();
  for (const auto& v : vertices()) best = std::min(best, lambda.pairing(v.raw));
  return best;
}

bool separate_point(const std::vector<long>& u, const std::vector<std::vector<long>>& pts,
                    std::vector<mpq_class>* functional) {
  const std::size_t n = u.size();
  // Variables: s, lambda_plus[n], lambda_minus[n]; maximize s.
  LinearProgram lp;
  const std::size_t nv = 1 + 2 * n;
  lp.c.assign(nv, 0);
  lp.c[0] = 1;
  for (const auto& a : pts) {
    std::vector<mpq_class> row(nv, 0);
    row[0] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      long diff = a[j] - u[j];
      row[1 + j] = -diff;
      row[1 + n + j] = diff;
    }
    lp.a.push_back(std::move(row));
    lp.b.emplace_back(0);
  }
  for (std::size_t j = 0; j < 2 * n; ++j) {
    std::vector<mpq_class> row(nv, 0);
    row[1 + j] = 1;
    lp.a.push_back(std::move(row));
    lp.b.emplace_back(1);
  }
  LpSolution sol = solve_exact_lp(lp);
  if (!sol.bounded) throw std::logic_error("separation LP unbounded");
  if (sgn(sol.objective) <= 0) return false;
  if (functional) {
    functional->assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) (*functional)[j] = sol.x[1 + j] - sol.x[1 + n + j];
  }
  return true;
}

std::vector<long> primitive_traceless(const std::vector<mpq_class>& v) {
  mpq_class mean = 0;
  for (const auto& x : v) mean += x;
  mean /= static_cast<long>(v.size());
  std::vector<mpq_class> w;
  mpz_class lcm = 1;
  for (const auto& x : v) {
    w.push_back(x - mean);
    w.back().canonicalize();
    lcm = lcm * w.back().get_den() / gcd(lcm, w.back().get_den());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& x : w) {
    mpq_class s = x * lcm;
    ints.push_back(s.get_num());
    g = gcd(g, ints.back());
  }
  std::vector<long> out;
  for (const auto& x : ints) {
    mpz_class y = g == 0 ? mpz_class(0) : mpz_class(x / g);
    require(y.fits_slong_p(), "functional does not fit a machine integer");
    out.push_back(y.get_si());
  }
  return out;
}

ContainmentResult contains(const LatticePolytope& inner, const LatticePolytope& outer) {
  require_dims(inner.size() == outer.size(), "polytope dimension mismatch");
  std::vector<std::vector<long>> pts;
  for (const auto& p : outer.points()) pts.push_back(p.scaled_projection());
  ContainmentResult res;
  for (const auto& u : inner.vertices()) {
    std::vector<mpq_class> f;
    if (separate_point(u.scaled_projection(), pts, &f)) {
      res.contained = false;
      res.witness = OnePSG(primitive_traceless(f));
      res.failing_vertex = u;
      return res;
    }
  }
  return res;
}

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q) {
  require_dims(p.size() == q.size(), "polytope dimension mismatch");
  std::vector<WeightCharacter> pts;
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      std::vector<long> r(a.raw);
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.raw[i];
      pts.emplace_back(std::move(r));
    }
  return LatticePolytope(p.size(), std::move(pts));
}

LatticePolytope scale(const LatticePolytope& p, long k) {
  require(k >= 0, "negative dilation");
  std::vector<WeightCharacter> pts;
  for (const auto& a : p.vertices()) {
    std::vector<long> r(a.raw);
    for (auto& x : r) x *= k;
    pts.emplace_back(std::move(r));
  }
  return LatticePolytope(p.size(), std::move(pts));
}

LatticePolytope standard_simplex(int n) {
  std::vector<WeightCharacter> pts;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    pts.emplace_back(std::move(e));
  }
  return LatticePolytope(n, std::move(pts));
}

LatticePolytope origin_polytope(int n) { return LatticePolytope(n, {WeightCharacter(std::vector<long>(n, 0))}); }

bool same_polytope(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.size() != q.size()) return false;
  std::set<std::vector<long>> a, b;
  for (const auto& v : p.vertices()) a.insert(v.scaled_projection());
  for (const auto& v : q.vertices()) b.insert(v.scaled_projection());
  return a == b;
}

int rep_degree(const VariableShape&, int total_degree) {
  require(total_degree >= 0, "negative degree");
  return total_degree;
}

}  // namespace stabpair
