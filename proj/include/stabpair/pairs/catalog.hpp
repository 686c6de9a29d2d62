#pragma once

#include "stabpair/pairs/pair.hpp"

#include <array>
#include <vector>

namespace stabpair {

/// prod_k (a_k x + b_k y) as an exact binary form; the empty product is the constant 1.
ExactPolynomial binary_linear_product(const std::vector<std::array<long, 2>>& factors);

/// v = (e0^e1) (x) (e0^e1) against w = (e0 e1) (x) (e0^e1) for SL(3).
Pair blow_up_pair();

/// Binary monomial x^a y^b.
ExactPolynomial binary_monomial(int a, int b);

}  // namespace stabpair
