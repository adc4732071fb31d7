#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "darmon/arith.hpp"

namespace darmon {

struct CurveSpec {
  std::string label;
  Int a1, a2, a3, a4, a6;
  Int conductor;
};

struct Invariants {
  Int b2, b4, b6, b8, c4, c6, disc;
  Rat j;
};

enum class ReductionType { Good, Split, NonSplit, Additive };

struct LocalReduction {
  Int p;
  ReductionType type = ReductionType::Good;
  long conductor_exponent = 0;
  long disc_valuation = 0;
  std::string kodaira;
};

Invariants invariants(const CurveSpec& e);
// Tate's algorithm at p; rejects models that are not minimal at p
LocalReduction local_reduction(const CurveSpec& e, const Int& p);
Int conductor(const CurveSpec& e);
// validates the discriminant, computes the conductor
CurveSpec make_curve(const std::string& label, const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                     const Int& a6);
CurveSpec curve_from_label(const std::string& label);
// one record per line: label a1 a2 a3 a4 a6
std::vector<CurveSpec> parse_curve_records(std::istream& in);

// l + 1 - #E(F_l) on the given (minimal) model, valid for good and bad l
long ap(const CurveSpec& e, long l);
std::vector<Int> an_list(const CurveSpec& e, size_t n);

struct RatPoint {
  bool inf = true;
  Rat x, y;
  bool operator==(const RatPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

bool on_curve(const CurveSpec& e, const RatPoint& p);
RatPoint neg(const CurveSpec& e, const RatPoint& p);
RatPoint add(const CurveSpec& e, const RatPoint& p, const RatPoint& q);
RatPoint mul(const CurveSpec& e, long k, const RatPoint& p);
// rational points with x = n/d^2, |n| <= nbound, d <= dbound, up to sign
std::vector<RatPoint> search_rational_points(const CurveSpec& e, long nbound, long dbound);
// finite order of a rational point, 0 if of infinite order (Mazur bound)
int torsion_order(const CurveSpec& e, const RatPoint& p);

// points over Q(sqrt D): coordinates (u + v sqrt D)
struct QuadRat {
  Rat u, v;
};
struct QuadPoint {
  bool inf = true;
  QuadRat x, y;
};
std::vector<QuadPoint> search_quadratic_points(const CurveSpec& e, const Int& D, long hbound);

// points over Q_{p^2}
struct LocalPoint {
  bool inf = true;
  QuadExt x, y;
};

struct LocalCurve {
  QuadExt a1, a2, a3, a4, a6;
  static LocalCurve from(const CurveSpec& e, const Int& p, long prec);
};

QuadExt residual(const LocalCurve& c, const LocalPoint& p);
LocalPoint neg(const LocalCurve& c, const LocalPoint& p);
LocalPoint add(const LocalCurve& c, const LocalPoint& p, const LocalPoint& q);
LocalPoint mul(const LocalCurve& c, long k, const LocalPoint& p);
LocalPoint to_local(const RatPoint& p, const Int& prime, long prec);
LocalPoint to_local(const QuadPoint& p, const QuadExt& sqrtd, long prec);

}  // namespace darmon
