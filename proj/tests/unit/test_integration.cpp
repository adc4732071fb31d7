#include <doctest.h>

#include <random>

#include "darmon/curve.hpp"
#include "darmon/integration.hpp"
#include "darmon/selftest.hpp"
#include "darmon/tate.hpp"

using namespace darmon;

namespace {
std::shared_ptr<const OverconvergentSymbol> lift_of(const char* lab, long p, long M) {
  auto phi = std::make_shared<const EigenSymbol>(eigensymbol_for_curve(curve_from_label(lab), 1));
  return std::make_shared<const OverconvergentSymbol>(OverconvergentSymbol::lift(phi, Int(p), M));
}
}  // namespace

TEST_SUITE("integration") {
  TEST_CASE("moment evaluator agrees with Riemann sums") {
    auto lift = lift_of("11a", 11, 6);
    QuadExt tau = standard_point(Int(11), 10);
    for (auto [r, s] : std::vector<std::pair<Cusp, Cusp>>{{Cusp::infinity(), Cusp::of(0, 1)},
                                                          {Cusp::of(1, 5), Cusp::of(-3, 4)}}) {
      BoundaryMeasure mu(lift->symbol_ptr(), Int(11), r, s);
      for (long depth : {1L, 2L, 3L}) {
        IntegralResult a = mult_integral_riemann(mu, tau, depth);
        IntegralResult b = mult_integral_moments(*lift, r, s, tau);
        CHECK(a.ord == b.ord);
        CHECK(a.log.equals_mod(b.log, std::min(depth, 5L)));
      }
    }
  }

  TEST_CASE("Riemann sums converge as the depth grows") {
    auto phi = std::make_shared<const EigenSymbol>(eigensymbol_for_curve(curve_from_label("11a"), 1));
    BoundaryMeasure mu(phi, Int(11), Cusp::of(2, 3), Cusp::infinity());
    QuadExt tau = standard_point(Int(11), 10);
    IntegralResult d2 = mult_integral_riemann(mu, tau, 2), d3 = mult_integral_riemann(mu, tau, 3);
    CHECK(d2.log.equals_mod(d3.log, 2));
  }

  TEST_CASE("SL2 words multiply back to the matrix") {
    std::vector<Mat2> gs = {{1, 0, 11, 1}, {2, 1, 11, 6}, {5, 3, 33, 20}, {-1, 0, 0, -1}};
    for (const Mat2& g : gs) {
      Mat2 prod{1, 0, 0, 1};
      for (auto [letter, n] : sl2_word(g)) {
        if (letter == 'S') prod = prod * Mat2{0, -1, 1, 0};
        else prod = prod * Mat2{1, n, 0, 1};
      }
      CHECK((prod == g || prod == Mat2{-g.a, -g.b, -g.c, -g.d}));
    }
  }

  TEST_CASE("hyperbolic elements of Gamma_0(p)") {
    for (const Mat2& g : hyperbolic_gamma0_elements(11, 6)) {
      CHECK(g.det() == 1);
      CHECK(mod(g.c, Int(11)) == 0);
      Int t = g.a + g.d;
      CHECK(t * t > 4);
    }
  }

  TEST_CASE("period homomorphism is additive") {
    auto lift = lift_of("11a", 11, 8);
    PeriodHomomorphism d(lift, 10);
    auto gs = hyperbolic_gamma0_elements(11, 3);
    BranchValue ab = d(gs[0] * gs[1]), sum = d(gs[0]) + d(gs[1]);
    CHECK(ab.ord == sum.ord);
    CHECK(ab.log.equals_mod(sum.log, 6));
  }

  TEST_CASE("L-invariant equals log q / ord q") {
    for (auto [lab, p] : std::vector<std::pair<const char*, long>>{{"11a", 11}, {"37a", 37}, {"17a", 17}}) {
      auto lift = lift_of(lab, p, 8);
      LInvariantResult r = compute_L_invariant(lift);
      CHECK(r.consistent);
      CHECK(r.value.equals_mod(tate_L_invariant(curve_from_label(lab), Int(p), 10), 6));
    }
  }
}
