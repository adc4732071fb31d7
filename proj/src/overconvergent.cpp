#include "darmon/overconvergent.hpp"

#include <thread>

namespace darmon {

namespace {

using Series = std::vector<Int>;

Series series_mul(const Series& x, const Series& y, const Int& m) {
  size_t n = x.size();
  Series r(n, 0);
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) r[i + j] += x[i] * y[j];
  }
  for (auto& v : r) v = mod(v, m);
  return r;
}

}  // namespace

std::vector<Int> mobius_matrix(const Int& a, const Int& b, const Int& c, const Int& d, const Int& center, long M,
                               const Int& modulus) {
  size_t n = static_cast<size_t>(M);
  Series den_inv(n, 0);
  Int dinv = inv_mod(d, modulus);
  // 1/(d + c v) = d^{-1} sum (-c/d)^k v^k
  Int ratio = mod(-c * dinv, modulus), pw = dinv;
  for (size_t k = 0; k < n; ++k) {
    den_inv[k] = pw;
    pw = mod(pw * ratio, modulus);
  }
  Series num(n, 0);
  num[0] = mod(b - center * d, modulus);
  if (n > 1) num[1] = mod(a - center * c, modulus);
  Series s = series_mul(num, den_inv, modulus);
  std::vector<Int> R(n * n, 0);
  Series cur(n, 0);
  cur[0] = mod(Int(1), modulus);
  for (size_t j = 0; j < n; ++j) {
    for (size_t k = 0; k < n; ++k) R[j * n + k] = cur[k];
    if (j + 1 < n) cur = series_mul(cur, s, modulus);
  }
  return R;
}

std::vector<Int> mobius_moments(const Int& a, const Int& b, const Int& c, const Int& d, const Int& center,
                                const std::vector<Int>& m, const Int& modulus) {
  size_t n = m.size();
  std::vector<Int> R = mobius_matrix(a, b, c, d, center, static_cast<long>(n), modulus);
  std::vector<Int> out(n, 0);
  for (size_t j = 0; j < n; ++j) {
    Int s = 0;
    for (size_t k = 0; k < n; ++k) s += R[j * n + k] * m[k];
    out[j] = mod(s, modulus);
  }
  return out;
}

void OverconvergentSymbol::init(std::shared_ptr<const EigenSymbol> phi, const Int& p, long M) {
  if (M < 1) throw PreconditionError("number of moments must be >= 1");
  if (p < 5) throw PreconditionError("p must be at least 5");
  ap_ = p_new_eigenvalue(*phi, p);
  phi_ = std::move(phi);
  p_ = p;
  M_ = M;
  m_level_ = phi_->level / p.get_si();
  mod_ = ipow(p, M);
}

void OverconvergentSymbol::build_up() {
  const P1List& p1 = *phi_->p1;
  size_t G = p1.size();
  size_t n = static_cast<size_t>(M_);
  up_.assign(G, {});
  long N = phi_->level;
  auto work = [&](size_t i) {
    std::vector<std::vector<Int>> acc(G);
    Mat2 g = p1.lift(i);
    Cusp r = g.act(Cusp::of(0, 1)), s = g.act(Cusp::infinity());
    for (Int a = 0; a < p_; ++a) {
      Mat2 t{1, -a, 0, p_};
      for (int side = 0; side < 2; ++side) {
        long sign = side == 0 ? 1 : -1;
        for (const Mat2& h : unimodular_pieces(t.act(side == 0 ? s : r))) {
          long j = p1.index(h.c, h.d);
          Mat2 gam = h * p1.lift(static_cast<size_t>(j)).adjugate();
          if (mod(gam.c, Int(N)) != 0) throw Error("internal: pushforward matrix outside Gamma_0(N)");
          std::vector<Int> R = mobius_matrix(p_ * gam.a + a * gam.c, p_ * gam.b + a * gam.d, gam.c, gam.d, 0,
                                             M_, mod_);
          auto& blk = acc[static_cast<size_t>(j)];
          if (blk.empty()) blk.assign(n * n, 0);
          for (size_t k = 0; k < n * n; ++k) blk[k] += sign * ap_ * R[k];
        }
      }
    }
    for (size_t j = 0; j < G; ++j) {
      if (acc[j].empty()) continue;
      bool nz = false;
      for (auto& v : acc[j]) {
        v = mod(v, mod_);
        nz = nz || v != 0;
      }
      if (nz) up_[i].push_back(Block{j, std::move(acc[j])});
    }
  };
  unsigned T = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      for (size_t i = t; i < G; i += T) work(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<std::vector<Int>> OverconvergentSymbol::apply_up(const std::vector<std::vector<Int>>& v) const {
  size_t n = static_cast<size_t>(M_);
  std::vector<std::vector<Int>> out(v.size(), std::vector<Int>(n, 0));
  for (size_t i = 0; i < v.size(); ++i) {
    for (const Block& b : up_[i]) {
      const auto& src = v[b.src];
      for (size_t j = 0; j < n; ++j) {
        Int s = 0;
        for (size_t k = 0; k < n; ++k) s += b.mat[j * n + k] * src[k];
        out[i][j] += s;
      }
    }
    for (auto& x : out[i]) x = mod(x, mod_);
  }
  return out;
}

OverconvergentSymbol OverconvergentSymbol::lift(std::shared_ptr<const EigenSymbol> phi, const Int& p, long M) {
  OverconvergentSymbol o;
  o.init(std::move(phi), p, M);
  size_t G = o.phi_->p1->size();
  o.gen_.assign(G, std::vector<Int>(static_cast<size_t>(M), 0));
  for (size_t i = 0; i < G; ++i) o.gen_[i][0] = o.phi_->values[i];
  if (M == 1) return o;
  o.build_up();
  long budget = 2 * M + 10;
  for (long it = 1; it <= budget; ++it) {
    auto next = o.apply_up(o.gen_);
    bool same = true;
    for (size_t i = 0; i < G; ++i) {
      if (mod(next[i][0] - o.phi_->values[i], o.mod_) != 0)
        throw Error("U_p does not fix the classical values; the symbol is not an a_p-eigensymbol at p");
      next[i][0] = o.phi_->values[i];
      if (next[i] != o.gen_[i]) same = false;
    }
    o.gen_ = std::move(next);
    o.iterations_ = it;
    if (same) return o;
  }
  throw Error("overconvergent lift did not converge within " + std::to_string(budget) +
              " U_p iterations (input not p-new or precision too small)");
}

OverconvergentSymbol OverconvergentSymbol::from_moments(std::shared_ptr<const EigenSymbol> phi, const Int& p,
                                                        long M, std::vector<std::vector<Int>> moments,
                                                        long iterations) {
  OverconvergentSymbol o;
  o.init(std::move(phi), p, M);
  if (moments.size() != o.phi_->p1->size()) throw Error("stored moments do not match the symbol");
  for (size_t i = 0; i < moments.size(); ++i)
    if (moments[i].size() != static_cast<size_t>(M) || moments[i][0] != o.phi_->values[i])
      throw Error("stored moments do not specialize to the symbol");
  o.gen_ = std::move(moments);
  o.iterations_ = iterations;
  if (M > 1) {
    o.build_up();
    if (o.up_defect() >= 0) throw Error("stored moments are not a U_p eigen-lift");
  }
  return o;
}

long OverconvergentSymbol::up_defect() const {
  if (M_ == 1) return -1;
  auto next = apply_up(gen_);
  long worst = -1;
  for (size_t i = 0; i < gen_.size(); ++i)
    for (long j = 0; j < M_; ++j) {
      Int m = ipow(p_, static_cast<unsigned long>(M_ - j));
      if (mod(next[i][j] - gen_[i][j], m) != 0 && (worst < 0 || j < worst)) worst = j;
    }
  return worst;
}

std::vector<Int> OverconvergentSymbol::path_moments(const Cusp& r, const Cusp& s) const {
  size_t n = static_cast<size_t>(M_);
  std::vector<Int> out(n, 0);
  const P1List& p1 = *phi_->p1;
  for (int side = 0; side < 2; ++side) {
    long sign = side == 0 ? 1 : -1;
    for (const Mat2& h : unimodular_pieces(side == 0 ? s : r)) {
      size_t j = static_cast<size_t>(p1.index(h.c, h.d));
      Mat2 gam = h * p1.lift(j).adjugate();
      std::vector<Int> m = n == 1 ? gen_[j] : mobius_moments(gam.a, gam.b, gam.c, gam.d, 0, gen_[j], mod_);
      for (size_t k = 0; k < n; ++k) out[k] += sign * m[k];
    }
  }
  out[0] = phi_->evaluate(r, s);
  for (size_t k = 1; k < n; ++k) out[k] = mod(out[k], mod_);
  return out;
}

MomentDistribution OverconvergentSymbol::moments_on_ball(const Cusp& r, const Cusp& s, const Ball& b) const {
  MomentDistribution md;
  md.p = p_;
  md.M = M_;
  md.ball = b;
  size_t n = static_cast<size_t>(M_);
  Int pn = ipow(p_, static_cast<unsigned long>(b.n));
  long sgn = (ap_ == -1 && b.n % 2 == 1) ? -1 : 1;
  std::vector<Int> m;
  if (!b.at_infinity) {
    Mat2 t{1, -b.a, 0, pn};
    m = path_moments(t.act(r), t.act(s));
  } else {
    Int L = m_level_;
    Int c = mod(inv_mod(L + b.a, pn), pn);
    Int e = (1 - (L + b.a) * c) / pn;
    Mat2 t = Mat2{1, -c, 0, pn} * Mat2{1, 0, L, 1};
    std::vector<Int> base = path_moments(t.act(r), t.act(s));
    Int m0 = base[0];
    m = n == 1 ? base : mobius_moments(-(L + b.a), e, pn, c, 0, base, mod_);
    if (n > 0) m[0] = m0;
  }
  md.moments.resize(n);
  md.precision.resize(n);
  for (size_t j = 0; j < n; ++j) {
    md.moments[j] = sgn * m[j] * ipow(pn, j);
    md.precision[j] = j == 0 ? kInfinity : b.n * static_cast<long>(j) + M_ - static_cast<long>(j);
  }
  return md;
}

}  // namespace darmon
