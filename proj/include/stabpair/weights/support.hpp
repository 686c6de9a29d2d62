#pragma once

#include "stabpair/weights/lattice.hpp"
#include "stabpair/weights/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace stabpair {

/// Coefficients below rel_tol * (largest magnitude) count as zero; exact data uses 0.
template <class K>
std::set<WeightCharacter> support(const Polynomial<K>& e, double rel_tol = 0.0) {
  require_nonzero(e, "support");
  double cap = 0.0;
  for (const auto& [x, c] : e.terms()) cap = std::max(cap, std::abs(to_complex(c)));
  std::set<WeightCharacter> out;
  for (const auto& [x, c] : e.terms())
    if (rel_tol == 0.0 || std::abs(to_complex(c)) > rel_tol * cap) out.insert(WeightCharacter(e.column_degrees(x)));
  return out;
}

template <class K>
std::set<WeightCharacter> support(const TensorVector<K>& e, double rel_tol = 0.0) {
  require(!e.is_zero(), "support: zero tensor");
  double cap = 0.0;
  for (const auto& [x, c] : e.coords()) cap = std::max(cap, std::abs(to_complex(c)));
  std::set<WeightCharacter> out;
  for (const auto& [x, c] : e.coords())
    if (rel_tol == 0.0 || std::abs(to_complex(c)) > rel_tol * cap) out.insert(WeightCharacter(e.character(x)));
  return out;
}

inline LatticePolytope polytope_of(int n, const std::set<WeightCharacter>& pts) {
  return LatticePolytope(n, std::vector<WeightCharacter>(pts.begin(), pts.end()));
}

template <class V>
LatticePolytope weight_polytope(const V& e, double rel_tol = 0.0) {
  int n;
  if constexpr (requires { e.shape(); })
    n = e.shape().group_size();
  else
    n = e.group_size();
  return polytope_of(n, support(e, rel_tol));
}

/// w_lambda(e): minimum of <a, lambda> over the support.
template <class V>
long psg_weight(const OnePSG& lambda, const V& e, double rel_tol = 0.0) {
  auto s = support(e, rel_tol);
  long best = 0;
  bool first = true;
  for (const auto& a : s) {
    long p = lambda.pairing(a.raw);
    if (first || p < best) best = p;
    first = false;
  }
  return best;
}

}  // namespace stabpair
