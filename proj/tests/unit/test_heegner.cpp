#include <doctest.h>

#include "darmon/heegner.hpp"

using namespace darmon;

TEST_SUITE("heegner") {
  TEST_CASE("Heegner forms") {
    for (auto [D, N] : std::vector<std::pair<long, long>>{{-7, 37}, {-7, 11}, {-47, 37}}) {
      Int beta = 0;
      while (mod(beta * beta - Int(D), Int(4 * N)) != 0) ++beta;
      auto forms = heegner_forms(Int(D), N, beta);
      for (const auto& f : forms) {
        CHECK(f.disc() == D);
        CHECK(mod(f.a, Int(N)) == 0);
        CHECK(mod(f.b - beta, Int(2 * N)) == 0);
      }
    }
  }

  TEST_CASE("period lattice of 37a") {
    PeriodLattice L = complex_periods(curve_from_label("37a"));
    CHECK(L.scalars_found);
    CHECK(L.j_error < Real("1e-30"));
    CHECK(L.consistency_error < Real("1e-30"));
    CHECK(L.ratio_real_part < Real("1e-30"));
    CHECK(abs(L.omega_plus.re - Real("-2.99345864623195962983976440")) < Real("1e-20"));
    ComplexPoint P = weierstrass_map(curve_from_label("37a"), L, Complex(Real("0.3"), Real("0.2")));
    CHECK(P.residual < Real("1e-30"));
  }

  TEST_CASE("q-expansion tail bound dominates the truncation error") {
    auto an = an_list(curve_from_label("11a"), 400);
    Complex z(Real("0.1"), Real("0.05"));
    Real y = z.im;
    Complex full = qexp_integral(an, z, 399), part = qexp_integral(an, z, 60);
    CHECK((full - part).abs() <= tail_bound(y, 60));
    CHECK(terms_for_height(Real("0.05"), 30) > terms_for_height(Real("0.5"), 30));
  }

  TEST_CASE("37a, D = -7: trace is a rational point") {
    HeegnerResult h = heegner_point(curve_from_label("37a"), Int(-7));
    CHECK(h.matched);
    CHECK(h.distance < Real("1e-15"));
    CHECK(h.lattice.ratio_real_part < Real("1e-20"));
    CHECK(h.modularity_error < Real("1e-20"));
    CHECK(h.permutation_error < Real("1e-20"));
  }

  TEST_CASE("11a, D = -7: rank zero, no rational match of infinite order") {
    HeegnerResult h = heegner_point(curve_from_label("11a"), Int(-7));
    CHECK(h.lattice.scalars_found);
    CHECK_FALSE(h.matched);
  }

  TEST_CASE("Heegner hypothesis is enforced") {
    CHECK_THROWS_AS(heegner_point(curve_from_label("37a"), Int(-8)), PreconditionError);
  }
}
