#include "stabpair/pairs/catalog.hpp"

namespace stabpair {

ExactPolynomial binary_linear_product(const std::vector<std::array<long, 2>>& factors) {
  const VariableShape sh = VariableShape::vector(2);
  ExactPolynomial p = ExactPolynomial::constant(sh, GaussianRational(1));
  for (const auto& [a, b] : factors) {
    require(a != 0 || b != 0, "zero linear factor");
    ExactPolynomial lin(sh, 1);
    lin.add_term({1, 0}, GaussianRational(a));
    lin.add_term({0, 1}, GaussianRational(b));
    p *= lin;
  }
  return p;
}

ExactPolynomial binary_monomial(int a, int b) {
  return ExactPolynomial::monomial(VariableShape::vector(2), {a, b});
}

Pair blow_up_pair() {
  const int n = 3;
  const int w01 = wedge_index(0, 1, n);
  ExactTensor v(n, {SlotKind::wedge2, SlotKind::wedge2});
  v.set({w01, w01}, GaussianRational(1));
  ExactTensor w(n, {SlotKind::vector, SlotKind::vector, SlotKind::wedge2});
  w.set({0, 1, w01}, GaussianRational(1));
  w.set({1, 0, w01}, GaussianRational(1));
  return Pair(v, w, "wedge-square", "product-wedge");
}

}  // namespace stabpair
