#include "darmon/integration.hpp"

#include <map>
#include <mutex>

namespace darmon {

std::string to_string(EvaluatorKind k) { return k == EvaluatorKind::Riemann ? "riemann" : "moments"; }

namespace {

long floor_log(const Int& p, long n) {
  long k = 0;
  Int x = p;
  while (x <= n) {
    x *= p;
    ++k;
  }
  return k;
}

QuadExt qconst(const Int& p, const Int& x, long prec) { return QuadExt::from_int(p, x, prec); }

long tau_distance(const QuadExt& tau) {
  long vb = tau.coord_b().is_zero() ? kInfinity : tau.coord_b().valuation();
  return std::max({0L, vb, -tau.valuation()});
}

void require_quadratic(const QuadExt& tau) {
  if (tau.is_zero() || tau.coord_b().is_zero()) throw PreconditionError("tau must lie in Q_{p^2} minus Q_p");
}

struct Accum {
  QuadExt prod;
  QuadExt series;
  long ord = 0;
  bool started = false;
};

void add_leaf(Accum& acc, const QuadExt& z, const Int& mass, const std::vector<QuadExt>& terms) {
  const Int& p = z.prime();
  long prec = z.abs_precision();
  if (!acc.started) {
    acc.prod = QuadExt::from_int(p, 1, prec);
    acc.series = QuadExt::zero(p, prec + 1);
    acc.started = true;
  }
  acc.ord += mass.get_si() * z.valuation();
  if (mass != 0) acc.prod = acc.prod * z.pow(mass.get_si());
  for (const auto& t : terms) acc.series = acc.series + t;
}

using MomentProvider = std::function<MomentDistribution(const Ball&)>;

void integrate_ball(const MomentProvider& mom, const QuadExt& tau, const Ball& b, long M, long maxdepth,
                    Accum& acc) {
  const Int& p = tau.prime();
  long K = tau.abs_precision();
  QuadExt z;
  bool leaf;
  if (!b.at_infinity) {
    z = qconst(p, b.a, K + b.n) - tau;
    leaf = z.valuation() < b.n;
  } else {
    z = qconst(p, 1, K + b.n) - tau * qconst(p, b.a, K + b.n);
    leaf = tau.valuation() + b.n > z.valuation();
  }
  if (!leaf) {
    if (b.n >= maxdepth) throw PrecisionError("tau too close to P^1(Q_p) for the working precision");
    for (const Ball& c : b.children(p)) integrate_ball(mom, tau, c, M, maxdepth, acc);
    return;
  }
  MomentDistribution md = mom(b);
  std::vector<QuadExt> terms;
  QuadExt zinv = QuadExt::from_int(p, 1, K + 2 * b.n) / z;
  QuadExt zpow = zinv;
  QuadExt tpow = -tau;
  for (long j = 1; j < M; ++j) {
    const Int& mj = md.moments[j];
    if (mj != 0) {
      long mprec = std::min(md.precision[j], K + b.n * j + 2);
      QuadExt m = QuadExt::from_int(p, mj, mprec);
      QuadExt t = m * zpow / qconst(p, j, K + 10);
      if (b.at_infinity) t = t * tpow;
      if (j % 2 == 0) t = -t;
      terms.push_back(t);
    }
    zpow = zpow * zinv;
    if (b.at_infinity) tpow = tpow * (-tau);
  }
  add_leaf(acc, z, md.moments[0], terms);
}

IntegralResult finish(const Accum& acc, EvaluatorKind kind, long depth, long cap) {
  IntegralResult res;
  res.evaluator = kind;
  res.depth = depth;
  res.ord = acc.ord;
  res.log = padic_log_iwasawa(acc.prod) + acc.series;
  QuadExt s = acc.series;
  res.value = acc.prod * (s.is_zero() ? QuadExt::from_int(s.prime(), 1, s.abs_precision()) : padic_exp(s));
  res.precision = std::min(cap, res.log.abs_precision());
  return res;
}

}  // namespace

IntegralResult mult_integral_riemann(const BoundaryMeasure& mu, const QuadExt& tau, long depth) {
  require_quadratic(tau);
  if (depth < 1) throw PreconditionError("depth must be >= 1");
  const Int& p = mu.prime();
  if (tau.prime() != p) throw PreconditionError("tau lives over a different prime");
  long K = tau.abs_precision();
  Accum acc;
  for (const Ball& b : balls_at_depth(p, depth)) {
    Int m = mu.mass(b);
    if (m == 0) continue;
    QuadExt z = b.at_infinity ? qconst(p, 1, K + depth) - tau * qconst(p, b.a, K + depth)
                              : qconst(p, b.a, K + depth) - tau;
    add_leaf(acc, z, m, {});
  }
  if (!acc.started) {
    acc.prod = QuadExt::from_int(p, 1, K);
    acc.series = QuadExt::zero(p, K);
  }
  return finish(acc, EvaluatorKind::Riemann, depth, depth - tau_distance(tau));
}

IntegralResult mult_integral_moments(const OverconvergentSymbol& phi, const Cusp& r, const Cusp& s,
                                     const QuadExt& tau) {
  require_quadratic(tau);
  const Int& p = phi.prime();
  if (tau.prime() != p) throw PreconditionError("tau lives over a different prime");
  long M = phi.moment_count();
  long K = tau.abs_precision();
  Accum acc;
  MomentProvider mom = [&](const Ball& b) { return phi.moments_on_ball(r, s, b); };
  for (const Ball& b : depth_one_balls(p)) integrate_ball(mom, tau, b, M, K + 2, acc);
  long cap = M - 1 - floor_log(p, M);
  if (cap < 1) throw PrecisionError("too few moments for any guaranteed precision");
  return finish(acc, EvaluatorKind::Moments, M, cap);
}

BranchValue BranchValue::operator+(const BranchValue& o) const { return {ord + o.ord, log + o.log}; }
BranchValue BranchValue::operator-(const BranchValue& o) const { return {ord - o.ord, log - o.log}; }
BranchValue BranchValue::scaled(const Rat& c) const {
  return {ord * c, log * QuadExt::from_rat(log.prime(), c, log.abs_precision() + 10)};
}

SectionLiftEvaluator::SectionLiftEvaluator(std::shared_ptr<const OverconvergentSymbol> phi) : phi_(std::move(phi)) {}

BranchValue SectionLiftEvaluator::operator()(const QuadExt& w) const {
  IntegralResult r = mult_integral_moments(*phi_, Cusp::infinity(), Cusp::of(0, 1), w);
  return BranchValue{Rat(r.ord), r.log};
}

std::vector<std::pair<char, Int>> sl2_word(const Mat2& g) {
  if (g.det() != 1) throw PreconditionError("matrix is not in SL_2(Z)");
  std::vector<std::pair<char, Int>> out;
  Int a = g.a, b = g.b, c = g.c, d = g.d;
  while (c != 0) {
    Rat q(a, c);
    q.canonicalize();
    q += Rat(1, 2);
    Int n;
    mpz_fdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (n != 0) out.emplace_back('T', n);
    a -= n * c;
    b -= n * d;
    out.emplace_back('S', 1);
    Int na = c, nb = d, nc = -a, nd = -b;
    a = na, b = nb, c = nc, d = nd;
  }
  Int t = b * a;
  if (t != 0) out.emplace_back('T', t);
  return out;
}

QuadExt mobius(const Mat2& g, const QuadExt& w) {
  const Int& p = w.prime();
  long K = w.abs_precision() + 4;
  QuadExt num = qconst(p, g.a, K) * w + qconst(p, g.b, K);
  QuadExt den = qconst(p, g.c, K) * w + qconst(p, g.d, K);
  return num / den;
}

QuadExt standard_point(const Int& p, long prec) { return QuadExt::make(PrimeField::get(p), 0, 0, 1, prec); }

namespace {

const Mat2 kS{0, -1, 1, 0};
const Mat2 kT{1, 1, 0, 1};

}  // namespace

VertexCocycle::VertexCocycle(SectionLift F, const Int& p, bool conjugated, const QuadExt& base)
    : F_(std::move(F)), p_(p), conj_(conjugated) {
  kappa_s_ = kappa_at(base);
  Mat2 U = kS * kT;
  Mat2 Ui = U.adjugate();
  auto act = [&](const Mat2& h, const QuadExt& w) {
    if (!conj_) return mobius(h, w);
    QuadExt pw = w * qconst(p_, p_, w.abs_precision() + 4);
    return mobius(h, pw) / qconst(p_, p_, w.abs_precision() + 4);
  };
  BranchValue sum = F_(base) + F_(act(Ui, base)) + F_(act(Ui * Ui, base));
  c_t_ = kappa_s_ - sum.scaled(Rat(1, 3));
}

BranchValue VertexCocycle::kappa_at(const QuadExt& w) const {
  QuadExt sw;
  if (!conj_) {
    sw = mobius(kS, w);
  } else {
    QuadExt P = qconst(p_, p_, w.abs_precision() + 4);
    sw = mobius(kS, w * P) / P;
  }
  return (F_(w) + F_(sw)).scaled(Rat(1, 2));
}

bool VertexCocycle::contains(const Mat2& g) const {
  if (g.det() != 1) return false;
  return !conj_ || mod(g.c, p_) == 0;
}

Mat2 VertexCocycle::to_sl2(const Mat2& g) const {
  if (!conj_) return g;
  return Mat2{g.a, g.b * p_, g.c / p_, g.d};
}

BranchValue VertexCocycle::operator()(const Mat2& g, const QuadExt& tau) const {
  if (!contains(g)) throw PreconditionError("matrix outside the vertex stabiliser");
  Mat2 h = to_sl2(g);
  const Int& p = tau.prime();
  long K = tau.abs_precision() + 4;
  QuadExt P = qconst(p, p_, K);
  QuadExt sigma = conj_ ? tau * P : tau;
  auto back = [&](const QuadExt& x) { return conj_ ? x / P : x; };
  Mat2 pref{1, 0, 0, 1};
  BranchValue tot{0, QuadExt::zero(p, K + 10)};
  for (const auto& [L, e] : sl2_word(h)) {
    if (L == 'T') {
      tot = tot + c_t_.scaled(Rat(e));
      pref = pref * Mat2{1, e, 0, 1};
    } else {
      QuadExt w = back(mobius(pref.adjugate(), sigma));
      tot = tot + (F_(w) - kappa_s_);
      pref = pref * kS;
    }
  }
  return tot;
}

PeriodHomomorphism::PeriodHomomorphism(std::shared_ptr<const OverconvergentSymbol> phi, long prec)
    : phi_(std::move(phi)), prec_(prec) {
  if (phi_->tame_level() != 1) throw PreconditionError("vertex cocycles are implemented for tame level 1 only");
  auto ev = std::make_shared<SectionLiftEvaluator>(phi_);
  auto memo = std::make_shared<std::pair<std::mutex, std::map<std::string, BranchValue>>>();
  SectionLift F = [ev, memo](const QuadExt& w) {
    std::string key = std::to_string(w.valuation()) + ":" + w.unit_a().get_str() + ":" + w.unit_b().get_str() +
                      ":" + std::to_string(w.rel_precision());
    {
      std::lock_guard lk(memo->first);
      auto it = memo->second.find(key);
      if (it != memo->second.end()) return it->second;
    }
    BranchValue v = (*ev)(w);
    std::lock_guard lk(memo->first);
    memo->second.emplace(key, v);
    return v;
  };
  base_ = standard_point(phi_->prime(), prec);
  c_ = std::make_shared<VertexCocycle>(F, phi_->prime(), false, base_);
  QuadExt P = QuadExt::from_int(phi_->prime(), phi_->prime(), prec + 4);
  c2_ = std::make_shared<VertexCocycle>(F, phi_->prime(), true, base_ / P);
}

BranchValue PeriodHomomorphism::at(const Mat2& g, const QuadExt& w) const {
  if (g.det() != 1 || mod(g.c, phi_->prime()) != 0) throw PreconditionError("matrix outside Gamma_0(p)");
  return (*c_)(g, w) - (*c2_)(g, w);
}

BranchValue PeriodHomomorphism::operator()(const Mat2& g) const { return at(g, base_); }

BranchValue cocycle_pairing(const PeriodHomomorphism& d, Branch l, const Mat2& g) {
  BranchValue v = d(g);
  if (l == Branch::Ord) v.log = QuadExt::zero(v.log.prime(), v.log.abs_precision());
  else v.ord = 0;
  return v;
}

LInvariantResult automorphic_L_invariant(const PeriodHomomorphism& d, const std::vector<Mat2>& gammas) {
  LInvariantResult res;
  bool have = false;
  for (const Mat2& g : gammas) {
    if (g == Mat2{1, 0, 0, 1} || g == Mat2{-1, 0, 0, -1}) continue;
    BranchValue v = d(g);
    res.gammas.push_back(g);
    res.d.push_back(v);
    if (v.ord == 0) continue;
    if (!v.log.is_zero() && !v.log.coord_b().is_zero() && v.log.coord_b().valuation() < v.log.abs_precision() - 1) {
      res.consistent = false;
    }
    Padic l = v.log.coord_a() / Padic::from_rat(v.log.prime(), v.ord, v.log.abs_precision() + 10);
    if (!have) {
      res.value = l;
      res.precision = l.abs_precision();
      have = true;
    } else {
      long k = std::min(res.precision, l.abs_precision());
      if (!res.value.equals_mod(l, k)) res.consistent = false;
      res.precision = std::min(res.precision, k);
    }
  }
  if (!have) throw Error("all ord-values vanish; supply other hyperbolic elements");
  return res;
}

std::vector<Mat2> hyperbolic_gamma0_elements(long N, size_t count) {
  std::vector<Mat2> out;
  for (long c = 1; out.size() < count && c < 1000; ++c)
    for (long d = 2; d < 60 && out.size() < count; ++d) {
      Int C = Int(N) * c;
      if (gcd(C, Int(d)) != 1) continue;
      Int a = inv_mod(Int(d), C);
      Int b = (a * d - 1) / C;
      Int tr = a + d;
      if (abs(tr) > 2) out.push_back(Mat2{a, b, C, d});
    }
  return out;
}

}  // namespace darmon
