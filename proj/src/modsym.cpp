#include "darmon/modsym.hpp"

#include <numeric>

namespace darmon {

Cusp Cusp::of(const Int& n, const Int& d) {
  if (d == 0) return Cusp{};
  Int g = gcd(n, d);
  Cusp c{n / g, d / g};
  if (c.den < 0) c.num = -c.num, c.den = -c.den;
  return c;
}

Cusp Cusp::of(const Rat& x) { return of(x.get_num(), x.get_den()); }

Rat Cusp::value() const {
  if (is_infinity()) throw PreconditionError("infinity has no rational value");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Cusp Mat2::act(const Cusp& x) const { return Cusp::of(a * x.num + b * x.den, c * x.num + d * x.den); }

std::vector<Mat2> unimodular_pieces(const Cusp& x) {
  std::vector<Mat2> out;
  if (x.is_infinity()) return out;
  Int p = x.num, q = x.den;
  Int pm2 = 0, qm2 = 1, pm1 = 1, qm1 = 0;
  while (q != 0) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Int r = p - a * q;
    Int pk = a * pm1 + pm2, qk = a * qm1 + qm2;
    Int s = pk * qm1 - pm1 * qk;
    out.push_back(Mat2{s * pk, pm1, s * qk, qm1});
    pm2 = pm1, qm2 = qm1, pm1 = pk, qm1 = qk;
    p = q, q = r;
  }
  return out;
}

Mat2 lift_to_sl2(const Int& c0, const Int& d0, long N) {
  Int n = N;
  Int c = mod(c0, n), d = mod(d0, n);
  if (N == 1) return Mat2{0, -1, 1, 0};
  if (c == 0) c = n;
  while (gcd(c, d) != 1) d += n;
  Int g, s, t;
  // s d + t c = 1 ; matrix (s, -t; c, d)
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t(), c.get_mpz_t());
  return Mat2{s, -t, c, d};
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, long N) {
  auto sval = [](const Cusp& z) -> Int {
    if (z.den == 0) return z.num;
    if (z.den == 1) return 0;
    return inv_mod(mod(z.num, z.den), z.den);
  };
  Int g = gcd(x.den * y.den, Int(N));
  return mod(sval(x) * y.den - sval(y) * x.den, g) == 0;
}

P1List::P1List(long N) : n_(N), table_(static_cast<size_t>(N) * N, -1) {
  std::vector<long> units;
  for (long u = 1; u <= std::max(N, 1L); ++u)
    if (std::gcd(u, N) == 1) units.push_back(u % std::max(N, 1L));
  for (long c = 0; c < std::max(N, 1L); ++c)
    for (long d = 0; d < std::max(N, 1L); ++d) {
      if (std::gcd(std::gcd(c, d), N) != 1) continue;
      std::pair<long, long> best{N, N};
      for (long u : units) {
        std::pair<long, long> cand{(u * c) % std::max(N, 1L), (u * d) % std::max(N, 1L)};
        if (cand < best) best = cand;
      }
      long& slot = table_[best.first * N + best.second];
      if (slot < 0) {
        slot = static_cast<long>(reps_.size());
        reps_.push_back(best);
        lifts_.push_back(lift_to_sl2(best.first, best.second, N));
      }
      long idx = slot;
      table_[c * N + d] = idx;
    }
}

long P1List::index(long c, long d) const {
  long N = std::max(n_, 1L);
  c %= N;
  d %= N;
  if (c < 0) c += N;
  if (d < 0) d += N;
  return table_[c * N + d];
}

long P1List::index(const Int& c, const Int& d) const {
  Int N = std::max(n_, 1L);
  return index(mod(c, N).get_si(), mod(d, N).get_si());
}

size_t P1List::star(size_t i) const { return static_cast<size_t>(index(-reps_[i].first, reps_[i].second)); }

size_t P1List::s_image(size_t i) const { return static_cast<size_t>(index(reps_[i].second, -reps_[i].first)); }

size_t P1List::tau_image(size_t i) const {
  return static_cast<size_t>(index(reps_[i].second, -reps_[i].first - reps_[i].second));
}

ManinSymbolSpace ManinSymbolSpace::build(long N, int sign) {
  if (N < 1) throw PreconditionError("level must be positive");
  ManinSymbolSpace sp;
  sp.sign_ = sign;
  sp.p1_ = std::make_shared<P1List>(N);
  const P1List& p1 = *sp.p1_;
  size_t n = p1.size();
  QMat rel;
  for (size_t i = 0; i < n; ++i) {
    QVec r(n, 0);
    r[i] += 1;
    r[p1.s_image(i)] += 1;
    rel.push_back(r);
    QVec t(n, 0);
    size_t j = p1.tau_image(i);
    t[i] += 1;
    t[j] += 1;
    t[p1.tau_image(j)] += 1;
    rel.push_back(t);
    if (sign != 0) {
      QVec s(n, 0);
      s[i] += 1;
      s[p1.star(i)] -= sign;
      rel.push_back(s);
    }
  }
  Echelon e = rref(rel, n);
  std::vector<long> pos(n, -1);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  for (size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) {
      pos[i] = static_cast<long>(sp.basis_.size());
      sp.basis_.push_back(i);
    }
  size_t dim = sp.basis_.size();
  sp.coords_.assign(n, QVec(dim, 0));
  for (size_t i = 0; i < n; ++i)
    if (!is_pivot[i]) sp.coords_[i][pos[i]] = 1;
  for (size_t r = 0; r < e.pivots.size(); ++r)
    for (size_t k = 0; k < dim; ++k) sp.coords_[e.pivots[r]][k] = -e.rows[r][sp.basis_[k]];
  for (size_t i = 0; i < n; ++i) {
    Mat2 g = p1.lift(i);
    for (const Cusp& x : {g.act(Cusp::of(0, 1)), g.act(Cusp::infinity())})
      if (sp.cusp_count() == 0 || sp.cusp_index(x) == sp.cusps_.size()) sp.cusps_.push_back(x);
  }
  return sp;
}

size_t ManinSymbolSpace::cusp_index(const Cusp& x) const {
  for (size_t j = 0; j < cusps_.size(); ++j)
    if (cusps_equivalent(x, cusps_[j], level())) return j;
  return cusps_.size();
}

size_t ManinSymbolSpace::cuspidal_dimension() const {
  size_t nc = cusps_.size();
  std::vector<size_t> rep(nc);
  std::vector<Rat> coef(nc, 1);
  for (size_t j = 0; j < nc; ++j) {
    rep[j] = j;
    if (sign_ == 0) continue;
    Cusp neg = Cusp::of(-cusps_[j].num, cusps_[j].den);
    if (cusps_[j].is_infinity()) neg = cusps_[j];
    size_t js = cusp_index(neg);
    if (js == j) {
      if (sign_ == -1) coef[j] = 0;
    } else if (js < j) {
      rep[j] = js;
      coef[j] = sign_;
    }
  }
  QMat b;
  for (size_t k : basis_) {
    Mat2 g = p1_->lift(k);
    QVec row(nc, 0);
    size_t hi = cusp_index(g.act(Cusp::infinity())), lo = cusp_index(g.act(Cusp::of(0, 1)));
    row[rep[hi]] += coef[hi];
    row[rep[lo]] -= coef[lo];
    b.push_back(row);
  }
  return dimension() - rank(b, nc);
}

std::vector<long> ManinSymbolSpace::path_generators(const Cusp& r, const Cusp& s) const {
  std::vector<long> w(p1_->size(), 0);
  for (const Mat2& g : unimodular_pieces(s)) w[p1_->index(g.c, g.d)] += 1;
  for (const Mat2& g : unimodular_pieces(r)) w[p1_->index(g.c, g.d)] -= 1;
  return w;
}

Rat ManinSymbolSpace::evaluate(const QVec& c, const Cusp& r, const Cusp& s) const {
  std::vector<long> w = path_generators(r, s);
  Rat v = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    for (size_t j = 0; j < c.size(); ++j) v += w[i] * coords_[i][j] * c[j];
  }
  return v;
}

namespace {

std::vector<Mat2> hecke_matrices(long l, long N) {
  std::vector<Mat2> out;
  for (long a = 0; a < l; ++a) out.push_back(Mat2{1, a, 0, l});
  if (N % l != 0) out.push_back(Mat2{l, 0, 0, 1});
  return out;
}

}  // namespace

QMat ManinSymbolSpace::hecke(long l) const {
  size_t dim = dimension();
  QMat h(dim, QVec(dim, 0));
  auto deltas = hecke_matrices(l, level());
  for (size_t k = 0; k < dim; ++k) {
    Mat2 g = p1_->lift(basis_[k]);
    Cusp r = g.act(Cusp::of(0, 1)), s = g.act(Cusp::infinity());
    std::vector<long> w(p1_->size(), 0);
    for (const Mat2& dl : deltas) {
      auto wi = path_generators(dl.act(r), dl.act(s));
      for (size_t i = 0; i < w.size(); ++i) w[i] += wi[i];
    }
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0) continue;
      for (size_t j = 0; j < dim; ++j) h[k][j] += w[i] * coords_[i][j];
    }
  }
  return h;
}

QMat ManinSymbolSpace::cuspidal_dual() const {
  long l0 = 2;
  while (level() % l0 == 0 || !is_prime(l0)) ++l0;
  QMat h = hecke(l0);
  for (size_t i = 0; i < h.size(); ++i) h[i][i] -= l0 + 1;
  QMat cols = transpose(h, dimension());
  return rref(cols, dimension()).rows;
}

bool ManinSymbolSpace::check_relations() const {
  const P1List& p1 = *p1_;
  size_t dim = dimension();
  for (size_t i = 0; i < p1.size(); ++i) {
    size_t j = p1.tau_image(i);
    for (size_t k = 0; k < dim; ++k) {
      if (coords_[i][k] + coords_[p1.s_image(i)][k] != 0) return false;
      if (coords_[i][k] + coords_[j][k] + coords_[p1.tau_image(j)][k] != 0) return false;
      if (sign_ != 0 && coords_[i][k] - sign_ * coords_[p1.star(i)][k] != 0) return false;
    }
  }
  return true;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  std::vector<bool> comp(static_cast<size_t>(std::max(n + 1, 2L)), false);
  for (long i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (long k = i * i; k <= n; k += i) comp[k] = true;
  }
  return out;
}

Int EigenSymbol::generator_value(const Int& c, const Int& d) const {
  long i = p1->index(c, d);
  if (i < 0) throw Error("not a point of P^1(Z/N)");
  return values[i];
}

Int EigenSymbol::from_infinity(const Cusp& x) const {
  Int v = 0;
  for (const Mat2& g : unimodular_pieces(x)) v += generator_value(g.c, g.d);
  return v;
}

Int EigenSymbol::evaluate(const Cusp& r, const Cusp& s) const { return from_infinity(s) - from_infinity(r); }

EigenSymbol eigensymbol_for_curve(const CurveSpec& e, int sign, long bound) {
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  long N = e.conductor.get_si();
  ManinSymbolSpace sp = ManinSymbolSpace::build(N, sign);
  size_t dim = sp.dimension();
  QMat v = identity(dim);
  EigenSymbol es;
  es.curve_label = e.label;
  es.level = N;
  es.sign = sign;
  es.p1 = sp.p1_ptr();
  for (long l : primes_up_to(bound)) {
    long a = ap(e, l);
    es.eigenvalues[l] = a;
    QMat h = sp.hecke(l);
    for (size_t i = 0; i < dim; ++i) h[i][i] -= a;
    QMat w;
    for (auto& vec : v) {
      QVec hv(dim, 0);
      for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j) hv[i] += h[i][j] * vec[j];
      w.push_back(hv);
    }
    QMat kern = nullspace(transpose(w, dim), v.size());
    QMat nv;
    for (auto& k : kern) {
      QVec x(dim, 0);
      for (size_t t = 0; t < v.size(); ++t)
        for (size_t i = 0; i < dim; ++i) x[i] += k[t] * v[t][i];
      nv.push_back(x);
    }
    if (nv.empty())
      throw PreconditionError("no eigenline for " + e.label + ": a_" + std::to_string(l) + " = " + std::to_string(a) +
                              " not matched at level " + std::to_string(N));
    v = rref(nv, dim).rows;
  }
  if (v.size() != 1) throw PreconditionError("eigenline not isolated; increase the eigenvalue bound");
  QVec raw = v[0];
  std::vector<Rat> vals(sp.p1().size(), 0);
  for (size_t i = 0; i < vals.size(); ++i)
    for (size_t j = 0; j < dim; ++j) vals[i] += sp.generator_coords()[i][j] * raw[j];
  Int l = 1, g = 0;
  for (auto& x : vals) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    g = gcd(g, x.get_num());
  }
  es.scalar = Rat(l, g);
  es.scalar.canonicalize();
  for (auto& x : vals) {
    Rat y = x * es.scalar;
    es.values.push_back(y.get_num());
  }
  return es;
}

}  // namespace darmon
