#pragma once

#include "darmon/curve.hpp"

namespace darmon {

struct TateCurveData {
  CurveSpec curve;
  Int p;
  long prec = 0;
  Padic q;
  bool split = true;
  // Tate model y^2 + xy = x^3 + a4q x + a6q
  Padic a4q, a6q;
  // (x, y) on the Tate model maps to (u^2 x + r, u^3 y + s u^2 x + t) on E; u^2 = alpha2
  Padic alpha2;
  QuadExt u, r, s, t;
  LocalCurve local;
};

Padic tate_q_from_j(const Rat& j, const Int& p, long prec);
// 1/j(q) evaluated by the q-series; the inverse of tate_q_from_j
Padic inverse_j_of_q(const Padic& q, long prec);
TateCurveData tate_parameter(const CurveSpec& e, const Int& p, long prec);

// log_p(q) / ord_p(q) with the Iwasawa logarithm
Padic tate_L_invariant(const CurveSpec& e, const Int& p, long prec);

// divide out the q-power so that 0 <= ord(u) < ord(q); returns the exponent removed
long reduce_to_annulus(const TateCurveData& d, QuadExt& u);
LocalPoint tate_map(const TateCurveData& d, const QuadExt& u);
// point of the Tate model itself, before the change of coordinates
LocalPoint tate_model_point(const TateCurveData& d, const QuadExt& u);
LocalCurve tate_model(const TateCurveData& d);
// true when the point is fixed by Frobenius (lies in E(Q_p))
bool is_frobenius_fixed(const LocalPoint& pt, long k);

}  // namespace darmon
