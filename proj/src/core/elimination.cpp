#include "stabpair/core/elimination.hpp"

#include <algorithm>

namespace stabpair {
namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n == 0) return out;
  // Trial division is enough for the small integer forms this is used on.
  if (n > mpz_class("1000000000000")) return {mpz_class(1)};
  for (mpz_class k = 1; k * k <= n; ++k)
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<mpz_class, mpz_class>> rational_roots(const BinaryForm<GaussianRational>& f) {
  std::vector<std::pair<mpz_class, mpz_class>> roots;
  if (f.is_zero()) return roots;
  for (const auto& c : f.coeffs)
    if (!c.is_real()) return roots;
  const int d = f.degree();
  mpz_class lcm = 1;
  for (const auto& c : f.coeffs) lcm = lcm * c.real().get_den() / gcd(lcm, c.real().get_den());
  std::vector<mpz_class> a;
  for (const auto& c : f.coeffs) {
    mpq_class s = c.real() * lcm;
    a.push_back(s.get_num());
  }
  auto value = [&](const mpz_class& p, const mpz_class& q) {
    mpz_class sum = 0;
    for (int k = 0; k <= d; ++k) {
      mpz_class term = a[k];
      for (int i = 0; i < d - k; ++i) term *= p;
      for (int i = 0; i < k; ++i) term *= q;
      sum += term;
    }
    return sum;
  };
  if (a[0] == 0) roots.emplace_back(1, 0);
  if (a[d] == 0) roots.emplace_back(0, 1);
  int k0 = 0, j0 = d;
  while (k0 <= d && a[k0] == 0) ++k0;
  while (j0 >= 0 && a[j0] == 0) --j0;
  if (k0 >= j0) return roots;
  for (const auto& p : divisors(a[j0]))
    for (const auto& q : divisors(a[k0])) {
      if (gcd(p, q) != 1) continue;
      for (int sign : {1, -1}) {
        mpz_class ps = p * sign;
        if (value(ps, q) == 0) roots.emplace_back(ps, q);
      }
    }
  return roots;
}

}  // namespace stabpair
