#include "stabpair/weights/exact_lp.hpp"

#include "stabpair/core/errors.hpp"

namespace stabpair {

LpSolution solve_exact_lp(const LinearProgram& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t n = lp.c.size();
  require_dims(lp.b.size() == m, "LP right-hand side size mismatch");
  for (const auto& row : lp.a) require_dims(row.size() == n, "LP row size mismatch");
  for (const auto& bi : lp.b) require(sgn(bi) >= 0, "LP needs a feasible origin (b >= 0)");

  // Tableau columns: n structural, m slack, then rhs.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<mpq_class>> t(m + 1, std::vector<mpq_class>(cols, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = lp.b[i];
  }
  // Objective row stores reduced costs of the minimization of -c.x.
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -lp.c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpSolution sol;
  for (;;) {
    // Bland: smallest index with negative reduced cost enters.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j)
      if (sgn(t[m][j]) < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;
    std::size_t leave = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      mpq_class ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      sol.bounded = false;
      return sol;
    }
    mpq_class piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      mpq_class f = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(t[leave][j]) != 0) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  sol.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
  sol.objective = t[m][cols - 1];
  return sol;
}

}  // namespace stabpair
