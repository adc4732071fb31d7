#pragma once

#include <optional>

#include "darmon/arith.hpp"

namespace darmon {

using IntMatrix = std::vector<std::vector<Int>>;

// LLL reduction (delta = 3/4) of the row basis, exact rational Gram-Schmidt
void lll_reduce(IntMatrix& basis);

// integer polynomial c_0 + c_1 x + ... + c_d x^d of degree <= d with small coefficients vanishing at x modulo
// p^prec (both coordinates of Q_{p^2}); nullopt if the shortest candidate has coefficients above `bound`
std::optional<std::vector<Int>> algdep_padic(const QuadExt& x, long degree, long prec, const Int& bound);

}  // namespace darmon
