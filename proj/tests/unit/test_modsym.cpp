#include <doctest.h>

#include <numeric>

#include "darmon/curve.hpp"
#include "darmon/modsym.hpp"

using namespace darmon;

TEST_SUITE("modsym") {
  TEST_CASE("P1 lists have index N prod (1 + 1/p)") {
    CHECK(P1List(11).size() == 12);
    CHECK(P1List(14).size() == 24);
    CHECK(P1List(37).size() == 38);
    P1List p1(15);
    for (size_t i = 0; i < p1.size(); ++i) {
      CHECK(p1.s_image(p1.s_image(i)) == i);
      CHECK(p1.star(p1.star(i)) == i);
      CHECK(p1.lift(i).det() == 1);
    }
  }

  TEST_CASE("space dimensions and relations") {
    for (long N : {11L, 14L, 15L, 37L, 43L}) {
      auto S = ManinSymbolSpace::build(N, 0);
      CHECK(S.check_relations());
      CHECK(S.cuspidal_dimension() % 2 == 0);
    }
    CHECK(ManinSymbolSpace::build(11, 0).cuspidal_dimension() == 2);
    CHECK(ManinSymbolSpace::build(37, 0).cuspidal_dimension() == 4);
  }

  TEST_CASE("unimodular path decomposition") {
    for (auto x : {Cusp::of(3, 7), Cusp::of(-5, 13), Cusp::of(22, 9)}) {
      auto pieces = unimodular_pieces(x);
      CHECK(!pieces.empty());
      for (const Mat2& g : pieces) CHECK(g.det() == 1);
      CHECK(pieces.back().act(Cusp::infinity()) == x);
    }
    CHECK(cusps_equivalent(Cusp::of(1, 2), Cusp::of(1, 3), 11));
    CHECK(cusps_equivalent(Cusp::of(1, 11), Cusp::infinity(), 11));
    CHECK_FALSE(cusps_equivalent(Cusp::of(0, 1), Cusp::infinity(), 11));
    CHECK_FALSE(cusps_equivalent(Cusp::of(1, 2), Cusp::of(1, 7), 14));
  }

  TEST_CASE("eigensymbols: Hecke eigenvalues, primitivity, invariance") {
    for (const char* lab : {"11a", "37a", "15a"}) {
      CurveSpec e = curve_from_label(lab);
      for (int sign : {1, -1}) {
        EigenSymbol phi = eigensymbol_for_curve(e, sign);
        for (auto [l, a] : phi.eigenvalues) CHECK(a == ap(e, l));
        Int g = 0;
        for (const Int& v : phi.values) g = gcd(g, v);
        CHECK(g == 1);
        Cusp r = Cusp::of(2, 9), s = Cusp::of(-1, 4), t = Cusp::of(5, 3);
        CHECK(phi.evaluate(r, s) + phi.evaluate(s, t) == phi.evaluate(r, t));
        CHECK(phi.evaluate(r, r) == 0);
        Mat2 gam{1, 1, e.conductor, e.conductor + 1};
        CHECK(phi.evaluate(gam.act(r), gam.act(s)) == phi.evaluate(r, s));
        Mat2 refl{-1, 0, 0, 1};
        CHECK(phi.evaluate(refl.act(r), refl.act(s)) == sign * phi.evaluate(r, s));
      }
    }
  }
}
