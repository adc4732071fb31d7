#include "darmon/darmon_point.hpp"

#include <algorithm>
#include <set>

#include "darmon/lll.hpp"

namespace darmon {

namespace {

using RSeries = std::vector<Rat>;

RSeries rmul(const RSeries& a, const RSeries& b, size_t n) {
  RSeries c(n, 0);
  for (size_t i = 0; i < std::min(n, a.size()); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

RSeries rinv(const RSeries& a, size_t n) {
  RSeries b(n, 0);
  b[0] = 1 / a[0];
  for (size_t k = 1; k < n; ++k) {
    Rat s = 0;
    for (size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * b[k - j];
    b[k] = -s * b[0];
  }
  return b;
}

QuadExt qint(const Int& p, const Int& x, long prec) { return QuadExt::from_int(p, x, prec); }

bool points_agree(const LocalPoint& a, const LocalPoint& b, long k) {
  if (a.inf || b.inf) return a.inf == b.inf;
  if (a.x.valuation() < 0 || b.x.valuation() < 0) {
    // compare in the formal parameter near the origin
    QuadExt ta = -(a.x / a.y), tb = -(b.x / b.y);
    return ta.equals_mod(tb, k);
  }
  return a.x.equals_mod(b.x, k) && a.y.equals_mod(b.y, k);
}

long agreement(const QuadExt& a, const QuadExt& b) {
  QuadExt d = a - b;
  return d.is_zero() ? d.abs_precision() : d.valuation();
}

}  // namespace

QuadExt period_value(const Int& p, const BranchValue& v, long prec) {
  if (v.ord.get_den() != 1) throw PrecisionError("period has non-integral valuation " + v.ord.get_str());
  long o = v.ord.get_num().get_si();
  QuadExt e = v.log.is_zero() ? qint(p, 1, prec) : padic_exp(v.log.with_precision(prec));
  QuadExt pp = qint(p, p, prec + std::labs(o) + 2);
  return o >= 0 ? e * pp.pow(o) : e / pp.pow(-o);
}

std::vector<Rat> formal_log_coefficients(const CurveSpec& e, size_t n) {
  size_t L = n + 4;
  // w = t^3 W(t) with w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3
  RSeries W(L, 0);
  W[0] = 1;
  Rat a1(e.a1), a2(e.a2), a3(e.a3), a4(e.a4), a6(e.a6);
  for (size_t it = 0; it < L; ++it) {
    RSeries W2 = rmul(W, W, L), W3 = rmul(W2, W, L);
    RSeries nw(L, 0);
    nw[0] = 1;
    for (size_t k = 0; k < L; ++k) {
      if (k + 1 < L) nw[k + 1] += a1 * W[k];
      if (k + 2 < L) nw[k + 2] += a2 * W[k];
      if (k + 3 < L) nw[k + 3] += a3 * W2[k];
      if (k + 4 < L) nw[k + 4] += a4 * W2[k];
      if (k + 6 < L) nw[k + 6] += a6 * W3[k];
    }
    if (nw == W) break;
    W = nw;
  }
  // omega/dt = (-2W - t W') / ((-2 + a1 t) W + a3 t^3 W^2)
  RSeries num(L, 0), den(L, 0), W2 = rmul(W, W, L);
  for (size_t k = 0; k < L; ++k) {
    num[k] = -2 * W[k] - Rat(static_cast<long>(k)) * W[k];
    den[k] = -2 * W[k] + (k >= 1 ? a1 * W[k - 1] : Rat(0)) + (k >= 3 ? a3 * W2[k - 3] : Rat(0));
  }
  RSeries om = rmul(num, rinv(den, L), L);
  std::vector<Rat> out(n + 1, 0);
  for (size_t k = 1; k <= n; ++k) out[k] = om[k - 1] / Rat(static_cast<long>(k));
  return out;
}

QuadExt formal_elliptic_log(const CurveSpec& e, const LocalCurve& c, const LocalPoint& P, long prec,
                            long* multiplier) {
  if (P.inf) {
    if (multiplier) *multiplier = 1;
    return QuadExt::zero(c.a1.prime(), prec);
  }
  const Int& p = P.x.prime();
  LocalPoint Q = P;
  long m = 1;
  while (!Q.inf && Q.x.valuation() >= 0) {
    if (++m > 200000) throw Error("point does not reach the formal group");
    Q = add(c, Q, P);
  }
  if (multiplier) *multiplier = m;
  if (Q.inf) return QuadExt::zero(p, prec);
  QuadExt t = -(Q.x / Q.y);
  long vt = t.valuation();
  size_t n = static_cast<size_t>((prec + 8) / std::max(vt, 1L) + 8);
  auto co = formal_log_coefficients(e, n);
  QuadExt sum = QuadExt::zero(p, prec + 4), tk = t;
  for (size_t k = 1; k <= n; ++k) {
    if (co[k] != 0) sum = sum + QuadExt::from_rat(p, co[k], prec + 8) * tk;
    tk = tk * t;
  }
  return sum / qint(p, m, prec + 8);
}

QuadExt log_q(const TateCurveData& d, const BranchValue& J) {
  Padic lq = padic_log_iwasawa(d.q);
  Rat r = J.ord / Rat(d.q.valuation());
  return J.log - QuadExt::from_padic(lq) * QuadExt::from_rat(d.p, r, J.log.abs_precision() + 10);
}

QuadExt tate_elliptic_log(const TateCurveData& d, const BranchValue& J) { return log_q(d, J) / d.u; }

std::string to_string(RecognitionOutcome o) {
  switch (o) {
    case RecognitionOutcome::Matched: return "matched";
    case RecognitionOutcome::Multiple: return "matched_multiple";
    case RecognitionOutcome::Algebraic: return "algebraic";
    case RecognitionOutcome::Torsion: return "torsion";
    default: return "unrecognized";
  }
}

int character_sign(const QuadraticOrderData& d, const CharacterData& chi) {
  if (d.eps_norm == -1) return 1;
  const QuadForm& f = d.forms[0];
  long k = class_index(d, QuadForm{-f.a, f.b, -f.c});
  return chi.values[static_cast<size_t>(k)];
}

std::shared_ptr<const OverconvergentSymbol> lift_for_darmon(const DarmonRequest& req, int sign) {
  auto phi = std::make_shared<const EigenSymbol>(eigensymbol_for_curve(req.curve, sign));
  return std::make_shared<const OverconvergentSymbol>(OverconvergentSymbol::lift(phi, req.p, req.moments));
}

std::vector<QuadPoint> global_candidates(const CurveSpec& e, const Int& D, long bound) {
  std::vector<QuadPoint> out;
  for (const RatPoint& P : search_rational_points(e, bound * bound, bound)) {
    if (P.inf || torsion_order(e, P) != 0) continue;
    QuadPoint q;
    q.inf = false;
    q.x = {P.x, 0};
    q.y = {P.y, 0};
    out.push_back(q);
  }
  if (D == 1) return out;
  Invariants v = invariants(e);
  Rat Dq(D);
  // x = n / (s d^2) with s | 4D: twisting by D introduces at most the divisors of 4D into the denominator
  Int fourD = abs(4 * D);
  std::set<Rat> seen;
  for (long s = 1; s <= fourD; ++s) {
    if (fourD % s != 0) continue;
    for (long dd = 1; dd <= bound; ++dd)
      for (long n = -bound * bound * s; n <= bound * bound * s; ++n) {
        Rat x(n, s * dd * dd);
        x.canonicalize();
        if (!seen.insert(x).second) continue;
        Rat f = 4 * x * x * x + Rat(v.b2) * x * x + 2 * Rat(v.b4) * x + Rat(v.b6);
        if (f == 0) continue;
        Rat g = f / Dq;
        if (sgn(g) < 0) continue;
        Int num = g.get_num(), den = g.get_den();
        if (!is_square(num) || !is_square(den)) continue;
        Rat b(sqrt(num), sqrt(den));
        QuadPoint q;
        q.inf = false;
        q.x = {x, 0};
        q.y = {(-Rat(e.a1) * x - Rat(e.a3)) / 2, b / 2};
        out.push_back(q);
      }
  }
  for (const QuadPoint& q : search_quadratic_points(e, D, bound)) {
    out.push_back(q);
    QuadPoint c = q;
    c.x.v = -c.x.v;
    c.y.v = -c.y.v;
    out.push_back(c);
  }
  return out;
}

Recognition recognize_point(const CurveSpec& e, const TateCurveData& tate, const QuadExt& elog,
                            const LocalPoint& point, const std::vector<Int>& fields, long prec, long bound) {
  Recognition r;
  const Int& p = tate.p;
  if (elog.is_zero() || elog.valuation() >= prec) {
    r.outcome = RecognitionOutcome::Torsion;
    r.agreement = elog.is_zero() ? elog.abs_precision() : elog.valuation();
    return r;
  }
  LocalCurve lc = LocalCurve::from(e, p, prec + 12);
  Int rbound = 12;
  bool have = false;
  for (const Int& f : fields) {
    QuadExt sq = f == 1 ? qint(p, 1, prec + 12) : sqrt_quadext(f, p, prec + 12);
    for (const QuadPoint& Q : global_candidates(e, f, bound)) {
      LocalPoint L = to_local(Q, sq, prec + 12);
      QuadExt lq = formal_elliptic_log(e, lc, L, prec + 6);
      if (lq.is_zero() || lq.valuation() >= prec) continue;
      QuadExt k = elog / lq;
      if (k.valuation() < 0) continue;
      QuadExt kr = k.with_precision(prec - 1);
      if (!kr.coord_b().is_zero() && kr.coord_b().valuation() < prec - 1) continue;
      Rat m;
      if (!rational_reconstruct(kr.coord_a().lift(), ipow(p, prec - 1), rbound, m)) continue;
      long ag = agreement(elog, QuadExt::from_rat(p, m, prec + 4) * lq);
      if (ag < prec - 1) continue;
      auto score = [](const Rat& x) -> Int { return abs(x.get_num()) * x.get_den(); };
      if (!have || score(m) < score(r.multiplier)) {
        have = true;
        r.field_disc = f;
        r.global = Q;
        r.multiplier = m;
        r.agreement = ag;
        r.outcome = abs(m) == 1 ? RecognitionOutcome::Matched : RecognitionOutcome::Multiple;
      }
    }
  }
  if (have) return r;
  if (!point.inf && point.x.valuation() >= 0) {
    auto poly = algdep_padic(point.x, 4, prec, Int(1000000));
    if (poly) {
      r.outcome = RecognitionOutcome::Algebraic;
      r.polynomial = *poly;
      r.agreement = prec;
      return r;
    }
  }
  r.outcome = RecognitionOutcome::Unrecognized;
  return r;
}

DarmonResult darmon_point(const DarmonRequest& req, std::shared_ptr<const OverconvergentSymbol> lift,
                          bool recognize) {
  DarmonResult res;
  res.request = req;
  const Int& p = req.p;
  long M = req.moments;
  if (M < 6) throw PreconditionError("Darmon points need at least 6 moments");
  QuadraticOrderData d = narrow_class_data(req.D);
  res.h_plus = d.h_plus;
  bool trivial = req.d1 == 1 || req.d2 == 1;
  res.character = trivial ? trivial_character(d) : genus_character(d, req.d1, req.d2);
  res.sign = character_sign(d, res.character);
  long N = conductor(req.curve).get_si();
  long prec = M + 2;
  auto embs = optimal_embeddings(req.D, N, p, prec);
  if (!lift) lift = lift_for_darmon(req, res.sign);
  if (lift->prime() != p || lift->moment_count() != M || lift->symbol().sign != res.sign)
    throw PreconditionError("supplied lift does not match the request");
  res.normalization = lift->symbol().scalar;
  res.lift_iterations = lift->iterations();
  res.tate = tate_parameter(req.curve, p, M + 8);
  PeriodHomomorphism ph(lift, prec);
  const VertexCocycle& c = ph.standard();
  long cap = M - 1;
  for (long t = p.get_si(); t <= M; t *= p.get_si()) --cap;
  res.precision = cap;
  res.combined = BranchValue{0, QuadExt::zero(p, prec + 10)};
  LocalPoint sum_pts;
  LocalCurve lc = LocalCurve::from(req.curve, p, M + 8);
  for (const auto& emb : embs) {
    if (!emb.eigen_ok) throw Error("embedding for " + emb.form.str() + " failed its eigenvector check");
    ClassPeriod cp;
    cp.form = emb.form;
    cp.class_index = emb.class_index;
    cp.chi = res.character.values[static_cast<size_t>(emb.class_index)];
    cp.tau = emb.tau;
    cp.gamma = emb.gamma;
    cp.period = c(emb.gamma, emb.tau);
    res.precision = std::min(res.precision, cp.period.log.abs_precision());
    cp.elliptic_log = tate_elliptic_log(res.tate, cp.period);
    cp.point = tate_map(res.tate, period_value(p, cp.period, M + 6));
    res.combined = res.combined + cp.period.scaled(Rat(cp.chi));
    sum_pts = add(lc, sum_pts, cp.chi == 1 ? cp.point : neg(lc, cp.point));
    res.classes.push_back(cp);
  }
  res.elliptic_log = tate_elliptic_log(res.tate, res.combined);
  res.point = tate_map(res.tate, period_value(p, res.combined, M + 6));
  res.group_law_ok = points_agree(res.point, sum_pts, res.precision - 2);

  const ClassPeriod& c0 = res.classes[0];
  BranchValue inv = c(c0.gamma.adjugate(), c0.tau);
  res.inverse_ok = inv.ord == -c0.period.ord && agreement(inv.log, -c0.period.log) >= res.precision;
  BranchValue conj = c(c0.gamma, c0.tau.frobenius());
  res.conjugate_ok = conj.ord == c0.period.ord && agreement(conj.log, c0.period.log.frobenius()) >= res.precision;
  res.base_point_ok = true;
  for (const Mat2& h : {Mat2{1, 0, 2, 1}, Mat2{2, -1, 3, -1}}) {
    BranchValue bx = c(h * c0.gamma * h.adjugate(), mobius(h, c0.tau));
    res.base_point_ok =
        res.base_point_ok && bx.ord == c0.period.ord && agreement(bx.log, c0.period.log) >= res.precision;
  }

  const QuadExt& lam = res.elliptic_log;
  if (agreement(lam.frobenius(), lam) >= res.precision) res.frobenius_eigenvalue = 1;
  else if (agreement(lam.frobenius(), -lam) >= res.precision) res.frobenius_eigenvalue = -1;

  if (recognize) {
    std::vector<Int> fields = trivial ? std::vector<Int>{req.D} : std::vector<Int>{req.d1, req.d2};
    res.recognition = recognize_point(req.curve, res.tate, res.elliptic_log, res.point, fields,
                                      std::min(res.precision, M - 4), 8);
  }
  return res;
}

ResummationReport class_permutation_resummation(const DarmonResult& r, const PeriodHomomorphism& ph, long prec) {
  ResummationReport rep;
  QuadraticOrderData d = narrow_class_data(r.request.D);
  auto table = composition_table(d);
  long N = conductor(r.request.curve).get_si();
  long Mt = N / r.request.p.get_si();
  const auto& chi = r.character.values;
  rep.ok = true;
  rep.agreement = prec;
  for (size_t k = 0; k < d.forms.size(); ++k) {
    BranchValue tot{0, QuadExt::zero(r.request.p, prec + 10)};
    for (size_t i = 0; i < d.forms.size(); ++i) {
      QuadForm f = compose(d.forms[k], d.forms[i]);
      Mat2 g = Mat2{1, static_cast<long>(k + 2 * i + 1), 0, 1} * Mat2{1, 0, Mt, 1};
      QuadForm fr = f.transform(g);
      if (Mt > 1) fr = form_with_divisible_a(fr, Int(Mt));
      OptimalEmbedding emb = embedding_for_form(d, fr, r.request.p, prec + 2);
      long j = table[k][i];
      if (emb.class_index != j || !emb.eigen_ok) rep.ok = false;
      BranchValue v = ph.standard()(emb.gamma, emb.tau);
      tot = tot + v.scaled(Rat(chi[i]));
      ++rep.checked;
    }
    tot = tot.scaled(Rat(chi[k]));
    rep.twisted_sums.push_back(tot.log);
    long ag = agreement(tot.log, r.combined.log);
    rep.agreement = std::min(rep.agreement, ag);
    if (tot.ord != r.combined.ord || ag < prec) rep.ok = false;
  }
  return rep;
}

}  // namespace darmon
