#pragma once

#include <gmpxx.h>

#include <vector>

namespace stabpair {

/// maximize c.x subject to A x <= b, x >= 0, with b >= 0 (origin feasible).
/// Dense tableau simplex over exact rationals with Bland's anti-cycling rule.
struct LinearProgram {
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  std::vector<mpq_class> c;
};

struct LpSolution {
  bool bounded = true;
  mpq_class objective;
  std::vector<mpq_class> x;
};

LpSolution solve_exact_lp(const LinearProgram& lp);

}  // namespace stabpair
