#pragma once

#include "darmon/arith.hpp"

namespace darmon::series {

using Series = std::vector<Int>;

Series mul(const Series& a, const Series& b, size_t n);
// a[0] must be +-1
Series inverse(const Series& a, size_t n);
Series power(const Series& a, unsigned e, size_t n);
// sum_{m>=1} sigma_k(m) q^m
Series sigma(unsigned k, size_t n);
// prod_{m>=1} (1 - q^m)^24
Series eta24(size_t n);
// E4 = 1 + 240 sum sigma_3(m) q^m
Series e4(size_t n);
// A(q) with 1/j(q) = q A(q), A(0) = 1
Series inverse_j_factor(size_t n);

}  // namespace darmon::series
