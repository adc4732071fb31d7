#include "darmon/lll.hpp"

namespace darmon {

namespace {

Rat dot(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int round_rat(const Rat& x) {
  Rat y = x + Rat(1, 2);
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return r;
}

}  // namespace

void lll_reduce(IntMatrix& b) {
  size_t n = b.size();
  if (n == 0) return;
  size_t m = b[0].size();
  auto as_rat = [&](size_t i) {
    std::vector<Rat> v(m);
    for (size_t j = 0; j < m; ++j) v[j] = b[i][j];
    return v;
  };
  std::vector<std::vector<Rat>> bs(n);
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, 0));
  std::vector<Rat> B(n);
  auto gram_schmidt = [&]() {
    for (size_t i = 0; i < n; ++i) {
      bs[i] = as_rat(i);
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = B[j] == 0 ? Rat(0) : dot(as_rat(i), bs[j]) / B[j];
        for (size_t k = 0; k < m; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      B[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt();
  size_t k = 1;
  long guard = 0;
  while (k < n) {
    if (++guard > 100000) throw Error("LLL did not terminate");
    for (size_t j = k; j-- > 0;) {
      Int q = round_rat(mu[k][j]);
      if (q != 0) {
        for (size_t c = 0; c < m; ++c) b[k][c] -= q * b[j][c];
        for (size_t c = 0; c <= j; ++c) mu[k][c] -= Rat(q) * (c == j ? Rat(1) : mu[j][c]);
      }
    }
    if (B[k] >= (Rat(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<size_t>(k - 1, 1);
    }
  }
}

std::optional<std::vector<Int>> algdep_padic(const QuadExt& x, long degree, long prec, const Int& bound) {
  const Int& p = x.prime();
  if (x.valuation() < 0) return std::nullopt;
  Int pk = ipow(p, prec);
  size_t n = static_cast<size_t>(degree + 1);
  std::vector<Int> A(n), Bc(n);
  QuadExt pw = QuadExt::from_int(p, 1, prec);
  for (size_t i = 0; i < n; ++i) {
    QuadExt v = pw.with_precision(prec);
    A[i] = v.is_zero() ? Int(0) : v.coord_a().lift();
    Bc[i] = v.is_zero() ? Int(0) : v.coord_b().lift();
    pw = pw * x;
  }
  Int W = pk;
  IntMatrix L(n + 2, std::vector<Int>(n + 2, 0));
  for (size_t i = 0; i < n; ++i) {
    L[i][i] = 1;
    L[i][n] = W * A[i];
    L[i][n + 1] = W * Bc[i];
  }
  L[n][n] = W * pk;
  L[n + 1][n + 1] = W * pk;
  lll_reduce(L);
  std::optional<std::vector<Int>> best;
  for (const auto& row : L) {
    if (row[n] != 0 || row[n + 1] != 0) continue;
    std::vector<Int> c(row.begin(), row.begin() + static_cast<long>(n));
    bool nz = false, small = true;
    for (auto& v : c) {
      nz = nz || v != 0;
      small = small && abs(v) <= bound;
    }
    if (!nz || !small) continue;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() < 2) continue;
    if (c.back() < 0)
      for (auto& v : c) v = -v;
    if (!best || c.size() < best->size()) best = c;
  }
  return best;
}

}  // namespace darmon
