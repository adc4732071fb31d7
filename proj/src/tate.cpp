#include "darmon/tate.hpp"

#include "darmon/series.hpp"

namespace darmon {

namespace {

Padic eval_series(const series::Series& c, const Padic& q) {
  const Int& p = q.prime();
  long prec = q.abs_precision();
  Padic acc = Padic::zero(p, prec);
  for (size_t i = c.size(); i-- > 0;) acc = acc * q + Padic::from_int(p, c[i], prec);
  return acc;
}

size_t series_length(long prec, long k) { return static_cast<size_t>(prec / std::max(k, 1L) + 3); }

}  // namespace

Padic inverse_j_of_q(const Padic& q, long prec) {
  long k = q.valuation();
  if (k < 1) throw PreconditionError("Tate parameter must have positive valuation");
  series::Series A = series::inverse_j_factor(series_length(prec, k));
  return q * eval_series(A, q.with_precision(prec));
}

Padic tate_q_from_j(const Rat& j, const Int& p, long prec) {
  if (j == 0 || vp(j, p) >= 0) throw PreconditionError("j must have negative valuation (multiplicative reduction)");
  long k = -vp(j, p);
  long W = prec + 2 * k + 4;
  Padic x = Padic::from_rat(p, Rat(1) / j, W);
  series::Series A = series::inverse_j_factor(series_length(W, k));
  Padic q = x;
  for (long it = 0; it < W / k + 3; ++it) q = x / eval_series(A, q);
  return q.with_precision(prec + k);
}

TateCurveData tate_parameter(const CurveSpec& e, const Int& p, long prec) {
  LocalReduction red = local_reduction(e, p);
  if (red.type != ReductionType::Split && red.type != ReductionType::NonSplit)
    throw PreconditionError("curve " + e.label + " does not have multiplicative reduction at p = " + p.get_str());
  if (p < 5) throw PreconditionError("Tate uniformization is implemented for p >= 5");
  Invariants inv = invariants(e);
  TateCurveData d;
  d.curve = e;
  d.p = p;
  d.prec = prec;
  long k = -vp(inv.j, p);
  long W = prec + 2 * k + 6;
  d.q = tate_q_from_j(inv.j, p, W);
  size_t n = series_length(W, k);
  series::Series s3 = series::sigma(3, n), s5 = series::sigma(5, n);
  Padic S3 = eval_series(s3, d.q.with_precision(W)), S5 = eval_series(s5, d.q.with_precision(W));
  d.a4q = Padic::from_int(p, -5, W) * S3;
  d.a6q = -(Padic::from_int(p, 5, W) * S3 + Padic::from_int(p, 7, W) * S5) / Padic::from_int(p, 12, W);
  Padic c4q = Padic::from_int(p, 1, W) - Padic::from_int(p, 48, W) * d.a4q;
  Padic c6q = Padic::from_int(p, -1, W) + Padic::from_int(p, 72, W) * d.a4q - Padic::from_int(p, 864, W) * d.a6q;
  Padic c4 = Padic::from_int(p, inv.c4, W), c6 = Padic::from_int(p, inv.c6, W);
  d.alpha2 = (c6 / c6q) / (c4 / c4q);
  if (d.alpha2.valuation() != 0) throw Error("non-unit isomorphism scalar; the model is not minimal at p");
  d.split = kronecker(mod(d.alpha2.lift(), p), p) == 1;
  if (d.split != (red.type == ReductionType::Split))
    throw Error("split/nonsplit mismatch between the Tate model and Tate's algorithm");
  long A = d.alpha2.abs_precision();
  d.u = sqrt_quadext(d.alpha2.lift(), p, A);
  QuadExt a1 = QuadExt::from_int(p, e.a1, W), a2 = QuadExt::from_int(p, e.a2, W), a3 = QuadExt::from_int(p, e.a3, W);
  QuadExt two = QuadExt::from_int(p, 2, W), three = QuadExt::from_int(p, 3, W);
  d.s = (d.u - a1) / two;
  d.r = (d.s * d.s + d.s * a1 - a2) / three;
  d.t = -(a3 + d.r * a1) / two;
  d.local = LocalCurve::from(e, p, W);
  return d;
}

Padic tate_L_invariant(const CurveSpec& e, const Int& p, long prec) {
  TateCurveData d = tate_parameter(e, p, prec + 2);
  return padic_log_iwasawa(d.q) / Padic::from_int(p, d.q.valuation(), prec + 4);
}

LocalCurve tate_model(const TateCurveData& d) {
  long W = d.q.abs_precision();
  return LocalCurve{QuadExt::from_int(d.p, 1, W), QuadExt::zero(d.p, W), QuadExt::zero(d.p, W),
                    QuadExt::from_padic(d.a4q), QuadExt::from_padic(d.a6q)};
}

long reduce_to_annulus(const TateCurveData& d, QuadExt& u) {
  if (u.is_zero()) throw PreconditionError("tate_map of zero");
  long k = d.q.valuation();
  long v = u.valuation();
  long m = v >= 0 ? v / k : -((-v + k - 1) / k);
  if (m != 0) u = u / QuadExt::from_padic(d.q).pow(m);
  return m;
}

LocalPoint tate_model_point(const TateCurveData& d, const QuadExt& u0) {
  QuadExt u = u0;
  reduce_to_annulus(d, u);
  const Int& p = d.p;
  long k = d.q.valuation();
  long W = std::min(u.abs_precision(), d.q.abs_precision());
  QuadExt one = QuadExt::from_int(p, 1, W + 4 * k + 10);
  QuadExt q = QuadExt::from_padic(d.q);
  QuadExt diff = one - u;
  if (diff.is_zero() || diff.valuation() >= W) return LocalPoint{};
  long terms = W / k + 3;
  QuadExt X = QuadExt::zero(p, W), Y = QuadExt::zero(p, W);
  QuadExt qn = one;
  for (long n = 0; n <= terms; ++n) {
    QuadExt z = qn * u;
    QuadExt om = one - z;
    X = X + z / (om * om);
    Y = Y + z * z / (om * om * om);
    if (n >= 1) {
      QuadExt zi = qn / u;
      QuadExt omi = one - zi;
      X = X + zi / (omi * omi);
      Y = Y - zi / (omi * omi * omi);
      QuadExt nq = QuadExt::from_int(p, n, W + 10) * qn / (one - qn);
      X = X - nq - nq;
      Y = Y + nq;
    }
    qn = qn * q;
  }
  return LocalPoint{false, X, Y};
}

LocalPoint tate_map(const TateCurveData& d, const QuadExt& u) {
  LocalPoint pt = tate_model_point(d, u);
  if (pt.inf) return pt;
  QuadExt u2 = d.u * d.u;
  return LocalPoint{false, u2 * pt.x + d.r, u2 * d.u * pt.y + d.s * u2 * pt.x + d.t};
}

bool is_frobenius_fixed(const LocalPoint& pt, long k) {
  if (pt.inf) return true;
  return pt.x.equals_mod(pt.x.frobenius(), k) && pt.y.equals_mod(pt.y.frobenius(), k);
}

}  // namespace darmon
