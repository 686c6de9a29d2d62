#pragma once

#include "stabpair/core/group.hpp"

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace stabpair {

/// Torus character: column-degree vector plus its trace-projected representative.
struct WeightCharacter {
  std::vector<long> raw;

  explicit WeightCharacter(std::vector<long> r) : raw(std::move(r)) {}
  int size() const { return static_cast<int>(raw.size()); }
  long total() const;
  /// raw minus its mean; sums to zero.
  std::vector<mpq_class> projected() const;
  /// (N+1) * projected, an integer vector; same order type as projected.
  std::vector<long> scaled_projection() const;

  friend bool operator==(const WeightCharacter& a, const WeightCharacter& b) { return a.raw == b.raw; }
  friend bool operator<(const WeightCharacter& a, const WeightCharacter& b) { return a.raw < b.raw; }
};

/// Convex hull of finitely many characters, compared modulo the determinant character.
class LatticePolytope {
 public:
  LatticePolytope(int n_plus_1, std::vector<WeightCharacter> points);

  int size() const { return n_; }
  /// Deduplicated by projected coordinates, sorted.
  const std::vector<WeightCharacter>& points() const { return points_; }
  /// Extreme points; computed once on first use (thread-safe).
  const std::vector<WeightCharacter>& vertices() const;

  long min_pairing(const OnePSG& lambda) const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<WeightCharacter> vertices;
  };
  int n_;
  std::vector<WeightCharacter> points_;
  std::shared_ptr<Cache> cache_;
};

struct ContainmentResult {
  bool contained = true;
  /// Primitive integer functional, components summing to zero, with
  /// min over outer > value on some inner vertex. Present iff !contained.
  std::optional<OnePSG> witness;
  std::optional<WeightCharacter> failing_vertex;
};

/// Is every vertex of inner in conv(outer)? Exact per-vertex LP.
ContainmentResult contains(const LatticePolytope& inner, const LatticePolytope& outer);

/// True iff u lies outside conv(points); on success fills a separating rational functional.
bool separate_point(const std::vector<long>& u_scaled, const std::vector<std::vector<long>>& points_scaled,
                    std::vector<mpq_class>* functional);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);
LatticePolytope scale(const LatticePolytope& p, long k);
/// Q_N: hull of the unit coordinate characters.
LatticePolytope standard_simplex(int n_plus_1);
/// Single point {0}.
LatticePolytope origin_polytope(int n_plus_1);

/// Same polytope modulo the determinant character (vertex sets agree after projection).
bool same_polytope(const LatticePolytope& p, const LatticePolytope& q);

/// Degree of the polynomial representation of total degree D: the least k with N(v) in k Q_N.
int rep_degree(const VariableShape& shape, int total_degree);

/// Clears a rational vector to a primitive integer vector after subtracting its mean.
std::vector<long> primitive_traceless(const std::vector<mpq_class>& v);

}  // namespace stabpair
