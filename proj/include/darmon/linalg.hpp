#pragma once

#include "darmon/arith.hpp"

namespace darmon {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

struct Echelon {
  QMat rows;
  std::vector<size_t> pivots;
};

Echelon rref(QMat m, size_t ncols);
// basis of {x : m x = 0}
QMat nullspace(const QMat& m, size_t ncols);
size_t rank(const QMat& m, size_t ncols);
QMat matmul(const QMat& a, const QMat& b);
QMat transpose(const QMat& a, size_t ncols);
QMat identity(size_t n);
// solve x with basis-columns B (n x k, full column rank): B x = v; throws if no solution
QVec solve_in_span(const QMat& columns_as_rows, const QVec& v);

}  // namespace darmon
