#include "darmon/series.hpp"

namespace darmon::series {

Series mul(const Series& a, const Series& b, size_t n) {
  Series r(n, 0);
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series inverse(const Series& a, size_t n) {
  if (a.empty() || (a[0] != 1 && a[0] != -1)) throw PreconditionError("series inverse needs a unit constant term");
  Series r(n, 0);
  r[0] = a[0];
  for (size_t k = 1; k < n; ++k) {
    Int s = 0;
    for (size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * r[k - i];
    r[k] = -s * a[0];
  }
  return r;
}

Series power(const Series& a, unsigned e, size_t n) {
  Series r(n, 0), b = a;
  r[0] = 1;
  b.resize(n, 0);
  while (e > 0) {
    if (e & 1) r = mul(r, b, n);
    e >>= 1;
    if (e) b = mul(b, b, n);
  }
  return r;
}

Series sigma(unsigned k, size_t n) {
  Series r(n, 0);
  for (size_t d = 1; d < n; ++d) {
    Int dk = ipow(Int(static_cast<unsigned long>(d)), k);
    for (size_t m = d; m < n; m += d) r[m] += dk;
  }
  return r;
}

Series eta24(size_t n) {
  Series r(n, 0);
  r[0] = 1;
  for (size_t m = 1; m < n; ++m) {
    // multiply by (1 - q^m) 24 times
    for (int t = 0; t < 24; ++t)
      for (size_t i = n - 1; i >= m; --i) {
        r[i] -= r[i - m];
        if (i == m) break;
      }
  }
  return r;
}

Series e4(size_t n) {
  Series r = sigma(3, n);
  for (auto& c : r) c *= 240;
  r[0] = 1;
  return r;
}

Series inverse_j_factor(size_t n) {
  Series e = e4(n);
  Series e3 = power(e, 3, n);
  return mul(eta24(n), inverse(e3, n), n);
}

}  // namespace darmon::series
