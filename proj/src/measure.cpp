#include "darmon/measure.hpp"

#include <mutex>

namespace darmon {

Ball Ball::finite(const Int& a, long n, const Int& p) { return Ball{mod(a, ipow(p, n)), n, false}; }

Ball Ball::infinite(const Int& a, long n, const Int& p) {
  if (n < 1) throw PreconditionError("ball at infinity needs depth >= 1");
  Ball b{mod(a, ipow(p, n)), n, true};
  if (mod(b.a, p) != 0) throw PreconditionError("ball at infinity needs p | a");
  return b;
}

std::vector<Ball> Ball::children(const Int& p) const {
  std::vector<Ball> out;
  Int pn = ipow(p, n);
  for (Int k = 0; k < p; ++k) out.push_back(Ball{a + k * pn, n + 1, at_infinity});
  return out;
}

std::string Ball::key() const { return (at_infinity ? "i" : "f") + std::to_string(n) + ":" + a.get_str(); }

std::vector<Ball> depth_one_balls(const Int& p) { return balls_at_depth(p, 1); }

std::vector<Ball> balls_at_depth(const Int& p, long n) {
  std::vector<Ball> out;
  Int pn = ipow(p, n), pn1 = ipow(p, n - 1);
  for (Int a = 0; a < pn; ++a) out.push_back(Ball{a, n, false});
  for (Int k = 0; k < pn1; ++k) out.push_back(Ball{k * p, n, true});
  return out;
}

long p_new_eigenvalue(const EigenSymbol& phi, const Int& p) {
  long pl = p.get_si();
  if (phi.level % pl != 0 || (phi.level / pl) % pl == 0)
    throw PreconditionError("symbol is not p-new at p = " + p.get_str() + " (p must divide the level exactly once)");
  auto it = phi.eigenvalues.find(pl);
  if (it == phi.eigenvalues.end() || (it->second != 1 && it->second != -1))
    throw PreconditionError("U_p eigenvalue must be +1 or -1 at p = " + p.get_str());
  return it->second;
}

Int measure_of_ball(const EigenSymbol& phi, const Int& p, long ap, const Cusp& r, const Cusp& s, const Ball& b) {
  if (b.at_infinity) {
    long m = phi.level / p.get_si();
    Mat2 g{1, 0, m, 1};
    Int pn = ipow(p, b.n);
    Ball image{mod(inv_mod(m + b.a, pn), pn), b.n, false};
    return measure_of_ball(phi, p, ap, g.act(r), g.act(s), image);
  }
  Int pn = ipow(p, b.n);
  Mat2 t{1, -b.a, 0, pn};
  Int v = phi.evaluate(t.act(r), t.act(s));
  return (ap == -1 && b.n % 2 == 1) ? Int(-v) : v;
}

BoundaryMeasure::BoundaryMeasure(std::shared_ptr<const EigenSymbol> phi, const Int& p, const Cusp& r, const Cusp& s)
    : phi_(std::move(phi)), p_(p), r_(r), s_(s) {
  ap_ = p_new_eigenvalue(*phi_, p_);
  m_ = phi_->level / p.get_si();
}

Int BoundaryMeasure::mass(const Ball& b) const {
  std::string k = b.key();
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
  }
  Int v = measure_of_ball(*phi_, p_, ap_, r_, s_, b);
  std::unique_lock lock(mu_);
  memo_.emplace(k, v);
  return v;
}

HarmonicityReport check_harmonicity(const std::function<Int(const Ball&)>& mu, const Int& p, long depth) {
  HarmonicityReport rep;
  Int total = 0;
  for (const Ball& b : depth_one_balls(p)) total += mu(b);
  ++rep.checked;
  if (total != 0) {
    rep.ok = false;
    rep.counterexample = Ball{0, 0, false};
    return rep;
  }
  std::vector<Ball> layer = depth_one_balls(p);
  layer.push_back(Ball{0, 0, false});
  for (long d = 0; d < depth; ++d) {
    std::vector<Ball> next;
    for (const Ball& b : layer) {
      if (b.n > d) {
        if (b.n == d + 1) next.push_back(b);
        continue;
      }
      Int s = 0;
      for (const Ball& c : b.children(p)) {
        s += mu(c);
        next.push_back(c);
      }
      ++rep.checked;
      if (s != mu(b)) {
        rep.ok = false;
        rep.counterexample = b;
        return rep;
      }
    }
    layer.clear();
    for (auto& b : next)
      if (b.n == d + 1) layer.push_back(b);
  }
  return rep;
}

}  // namespace darmon
