#include "darmon/linalg.hpp"

namespace darmon {

Echelon rref(QMat m, size_t ncols) {
  Echelon e;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < m.size(); ++c) {
    size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    Rat inv = 1 / m[r][c];
    for (size_t j = c; j < ncols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < ncols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

QMat nullspace(const QMat& m, size_t ncols) {
  Echelon e = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  QMat out;
  for (size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVec x(ncols, 0);
    x[f] = 1;
    for (size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
    out.push_back(std::move(x));
  }
  return out;
}

size_t rank(const QMat& m, size_t ncols) { return rref(m, ncols).pivots.size(); }

QMat matmul(const QMat& a, const QMat& b) {
  if (a.empty()) return {};
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat r(n, QVec(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

QMat transpose(const QMat& a, size_t ncols) {
  QMat t(ncols, QVec(a.size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

QMat identity(size_t n) {
  QMat r(n, QVec(n, 0));
  for (size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

QVec solve_in_span(const QMat& cols, const QVec& v) {
  size_t k = cols.size(), n = v.size();
  QMat aug(n, QVec(k + 1, 0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < k; ++j) aug[i][j] = cols[j][i];
    aug[i][k] = v[i];
  }
  Echelon e = rref(aug, k + 1);
  QVec x(k, 0);
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == k) throw Error("vector not in span");
    x[e.pivots[i]] = e.rows[i][k];
  }
  return x;
}

}  // namespace darmon
