#include <doctest.h>

#include <random>

#include "darmon/tate.hpp"

using namespace darmon;

namespace {
QuadExt unit(std::mt19937& g, long p, long prec) {
  long a = 1 + static_cast<long>(g() % 100000), b = static_cast<long>(g() % 100000);
  if (a % p == 0) ++a;
  return QuadExt::from_coords(Int(p), Rat(a), Rat(b), prec);
}
}  // namespace

TEST_SUITE("tate") {
  TEST_CASE("q from j inverts the j-series") {
    CurveSpec e = curve_from_label("11a");
    Rat j = invariants(e).j;
    Padic q = tate_q_from_j(j, Int(11), 20);
    CHECK(q.valuation() == 5);
    CHECK(inverse_j_of_q(q, 20).equals_mod(Padic::from_rat(Int(11), 1 / j, 25), 20));
  }

  TEST_CASE("ord q = -ord j and reduction type") {
    for (auto [lab, p] : std::vector<std::pair<const char*, long>>{{"11a", 11}, {"14a", 7}, {"15a", 5}, {"37a", 37}}) {
      CurveSpec e = curve_from_label(lab);
      TateCurveData d = tate_parameter(e, Int(p), 12);
      CHECK(d.q.valuation() == -vp(invariants(e).j, Int(p)));
      CHECK(d.split == (local_reduction(e, Int(p)).type == ReductionType::Split));
    }
  }

  TEST_CASE("Tate map is a homomorphism onto points of the curve") {
    std::mt19937 g(17);
    for (auto [lab, p] : std::vector<std::pair<const char*, long>>{{"11a", 11}, {"37a", 37}}) {
      CurveSpec e = curve_from_label(lab);
      TateCurveData d = tate_parameter(e, Int(p), 16);
      LocalCurve c = LocalCurve::from(e, Int(p), 16);
      for (int i = 0; i < 10; ++i) {
        QuadExt u1 = unit(g, p, 16), u2 = unit(g, p, 16);
        LocalPoint P = tate_map(d, u1), Q = tate_map(d, u2), PQ = tate_map(d, u1 * u2);
        for (const LocalPoint& X : {P, Q, PQ})
          if (!X.inf) {
            QuadExt r = residual(c, X);
            CHECK((r.is_zero() || r.valuation() >= 12 + std::min(0L, 3 * X.x.valuation())));
          }
        LocalPoint S = add(c, P, Q);
        if (!S.inf && !PQ.inf && PQ.x.valuation() >= 0) {
          CHECK(S.x.equals_mod(PQ.x, 12));
          CHECK(S.y.equals_mod(PQ.y, 12));
        }
      }
      CHECK(tate_map(d, QuadExt::from_padic(d.q)).inf);
    }
  }

  TEST_CASE("Frobenius-fixed points of a split curve") {
    CurveSpec e = curve_from_label("11a");
    TateCurveData d = tate_parameter(e, Int(11), 12);
    LocalPoint P = tate_map(d, QuadExt::from_int(Int(11), Int(3), 12));
    CHECK(is_frobenius_fixed(P, 10));
  }
}
