#include <doctest.h>

#include <sstream>

#include "darmon/curve.hpp"
#include "darmon/selftest.hpp"

using namespace darmon;

TEST_SUITE("curve") {
  TEST_CASE("invariants and conductors of the corpus") {
    CurveSpec e = curve_from_label("11a");
    Invariants v = invariants(e);
    CHECK(v.disc == -161051);
    CHECK(v.j == Rat(-122023936, 161051));
    CHECK(conductor(e) == 11);
    CHECK(local_reduction(e, Int(11)).kodaira == "I5");
    CHECK(local_reduction(e, Int(11)).type == ReductionType::Split);
    CHECK(local_reduction(curve_from_label("37a"), Int(37)).type == ReductionType::NonSplit);
    for (auto [lab, n] : std::vector<std::pair<std::string, long>>{
             {"14a", 14}, {"15a", 15}, {"17a", 17}, {"19a", 19}, {"37a", 37}, {"37b", 37}, {"43a", 43}, {"53a", 53}})
      CHECK(curve_from_label(lab).conductor == n);
  }

  TEST_CASE("a_l agrees with brute-force point counts") {
    for (const char* lab : {"11a", "14a", "15a", "37a", "43a"}) {
      CurveSpec e = curve_from_label(lab);
      for (long l : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L})
        if (mod(e.conductor, Int(l)) != 0) CHECK(ap(e, l) == l + 1 - count_points(e, l));
    }
    auto an = an_list(curve_from_label("11a"), 12);
    CHECK(an[1] == 1);
    CHECK(an[2] == -2);
    CHECK(an[4] == 2);
    CHECK(an[6] == 2);
    CHECK(an[11] == 1);
  }

  TEST_CASE("rational group law") {
    CurveSpec e = curve_from_label("37a");
    RatPoint P{false, 0, 0};
    REQUIRE(on_curve(e, P));
    CHECK(torsion_order(e, P) == 0);
    RatPoint a = add(e, mul(e, 2, P), mul(e, 3, P)), b = mul(e, 5, P);
    CHECK(a == b);
    CHECK(add(e, P, neg(e, P)).inf);
    CurveSpec e11 = curve_from_label("11a");
    RatPoint T{false, 5, 5};
    REQUIRE(on_curve(e11, T));
    CHECK(torsion_order(e11, T) == 5);
    CHECK(mul(e11, 5, T).inf);
  }

  TEST_CASE("curve records and validation") {
    std::istringstream in("# corpus\n11a 0 -1 1 -10 -20\n37a 0 0 1 -1 0  # rank one\n\n");
    auto cs = parse_curve_records(in);
    REQUIRE(cs.size() == 2);
    CHECK(cs[1].label == "37a");
    CHECK(cs[1].conductor == 37);
    CHECK_THROWS_AS(make_curve("sing", 0, 0, 0, 0, 0), PreconditionError);
    std::istringstream bad("x 1 2 3\n");
    CHECK_THROWS_AS(parse_curve_records(bad), PreconditionError);
    CHECK_THROWS_AS(curve_from_label("999z"), PreconditionError);
  }

  TEST_CASE("local group law matches the rational one") {
    CurveSpec e = curve_from_label("37a");
    LocalCurve c = LocalCurve::from(e, Int(37), 20);
    RatPoint P{false, 0, 0};
    for (long k = 1; k <= 6; ++k) {
      RatPoint Q = mul(e, k, P);
      LocalPoint L = mul(c, k, to_local(P, Int(37), 20));
      LocalPoint R = to_local(Q, Int(37), 20);
      if (Q.x.get_den() % 37 == 0) continue;
      CHECK(L.x.equals_mod(R.x, 15));
      CHECK(L.y.equals_mod(R.y, 15));
    }
  }

  TEST_CASE("genus formula and point counts") {
    std::vector<std::pair<long, long>> g = {{11, 1}, {14, 1}, {15, 1}, {20, 1}, {23, 2}, {24, 1}, {27, 1},
                                            {36, 1}, {37, 2}, {49, 1}, {64, 3}, {100, 7}, {2, 0},  {1, 0}};
    for (auto [N, genus] : g) CHECK(genus_x0(N) == genus);
    CHECK(count_points(curve_from_label("11a"), 2) == 5);
  }
}
