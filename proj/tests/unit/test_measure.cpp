#include <doctest.h>

#include "darmon/curve.hpp"
#include "darmon/measure.hpp"
#include "darmon/overconvergent.hpp"

using namespace darmon;

namespace {
std::shared_ptr<const EigenSymbol> symbol(const char* lab, int sign = 1) {
  return std::make_shared<const EigenSymbol>(eigensymbol_for_curve(curve_from_label(lab), sign));
}
}  // namespace

TEST_SUITE("measure") {
  TEST_CASE("ball combinatorics") {
    Int p = 5;
    CHECK(depth_one_balls(p).size() == 6);
    CHECK(balls_at_depth(p, 3).size() == 125 + 25);
    Ball b = Ball::finite(Int(3), 1, p);
    auto ch = b.children(p);
    CHECK(ch.size() == 5);
    for (const auto& c : ch) CHECK(mod(c.a, p) == 3);
  }

  TEST_CASE("harmonicity and total mass zero") {
    for (auto [lab, p] : std::vector<std::pair<const char*, long>>{{"11a", 11}, {"14a", 7}, {"15a", 5}, {"37a", 37}})
      for (int sign : {1, -1}) {
        BoundaryMeasure mu(symbol(lab, sign), Int(p), Cusp::of(1, 3), Cusp::of(-2, 5));
        auto rep = check_harmonicity([&](const Ball& b) { return mu.mass(b); }, Int(p), 2);
        CHECK(rep.ok);
        CHECK(rep.checked > 0);
        Int total = 0;
        for (const Ball& b : depth_one_balls(Int(p))) total += mu.mass(b);
        CHECK(total == 0);
      }
  }

  TEST_CASE("harmonicity check detects a broken measure") {
    BoundaryMeasure mu(symbol("11a"), Int(11), Cusp::infinity(), Cusp::of(0, 1));
    Ball target = Ball::finite(Int(3), 2, Int(11));
    auto rep = check_harmonicity(
        [&](const Ball& b) { return mu.mass(b) + (b == target ? Int(1) : Int(0)); }, Int(11), 2);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.counterexample.has_value());
  }

  TEST_CASE("p-new eigenvalue and preconditions") {
    CHECK(p_new_eigenvalue(*symbol("11a"), Int(11)) == 1);
    CHECK(p_new_eigenvalue(*symbol("37a"), Int(37)) == -1);
    CHECK_THROWS_AS(p_new_eigenvalue(*symbol("11a"), Int(7)), PreconditionError);
  }
}

TEST_SUITE("overconvergent") {
  TEST_CASE("eigen-lift is fixed by U_p / a_p and specializes to the symbol") {
    auto phi = symbol("11a");
    auto lift = OverconvergentSymbol::lift(phi, Int(11), 6);
    CHECK(lift.up_defect() == -1);
    for (size_t i = 0; i < phi->values.size(); ++i) CHECK(lift.generator_moments()[i][0] == phi->values[i]);
    BoundaryMeasure mu(phi, Int(11), Cusp::of(1, 2), Cusp::of(3, 7));
    auto m = lift.path_moments(Cusp::of(1, 2), Cusp::of(3, 7));
    CHECK(mod(m[0] - mu.mass(Ball::finite(Int(0), 0, Int(11))), ipow(Int(11), 6)) == 0);
  }

  TEST_CASE("path moments match Riemann moments on balls") {
    auto phi = symbol("37a");
    auto lift = OverconvergentSymbol::lift(phi, Int(37), 5);
    Cusp r = Cusp::infinity(), s = Cusp::of(2, 3);
    BoundaryMeasure mu(phi, Int(37), r, s);
    auto m = lift.path_moments(r, s);
    // m_1 = int_{Z_p} t dmu is approximated by sum over balls of depth n of a * mu(ball) modulo p^n
    Int approx = 0;
    for (const Ball& b : balls_at_depth(Int(37), 2))
      if (!b.at_infinity) approx += b.a * mu.mass(b);
    CHECK(mod(approx - m[1], Int(37 * 37)) == 0);
  }

  TEST_CASE("stored moments round trip and tampering is rejected") {
    auto phi = symbol("11a");
    auto lift = OverconvergentSymbol::lift(phi, Int(11), 6);
    auto again = OverconvergentSymbol::from_moments(phi, Int(11), 6, lift.generator_moments(), lift.iterations());
    CHECK(again.generator_moments() == lift.generator_moments());
    auto bad = lift.generator_moments();
    bad[1][2] += 1;
    CHECK_THROWS(OverconvergentSymbol::from_moments(phi, Int(11), 6, bad, 0));
  }

  TEST_CASE("mobius pushforward by the identity is trivial") {
    std::vector<Int> m = {3, 5, 7, 11};
    auto out = mobius_moments(1, 0, 0, 1, 0, m, Int(5 * 5 * 5 * 5 * 5));
    CHECK(out == m);
  }
}
