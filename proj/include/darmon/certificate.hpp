#pragma once

#include <json.hpp>

#include "darmon/darmon_point.hpp"
#include "darmon/heegner.hpp"

namespace darmon {

using Json = nlohmann::json;

constexpr int kCertificateVersion = 1;
constexpr const char* kCertificateSchema = "darmon-certificate";

Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const Padic& x);
Json to_json(const QuadExt& x);
Json to_json(const Mat2& g);
Json to_json(const QuadForm& f);
Json to_json(const CurveSpec& e);
Json to_json(const LocalPoint& P);
Json to_json(const QuadPoint& P);
Json to_json(const Complex& z);
Json to_json(const BranchValue& v);

Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
Padic padic_from_json(const Json& j, const Int& p);
QuadExt quadext_from_json(const Json& j, const Int& p);
Mat2 mat_from_json(const Json& j);
QuadForm form_from_json(const Json& j);
CurveSpec curve_from_json(const Json& j);
LocalPoint local_point_from_json(const Json& j, const Int& p);
QuadPoint quad_point_from_json(const Json& j);
Complex complex_from_json(const Json& j);
BranchValue branch_from_json(const Json& j, const Int& p);

// the fixed branch choices shared by every certificate and cache key
Json branch_choices(const Int& p);
Json envelope(const std::string& kind, const CurveSpec& e);

Json eigensymbol_certificate(const CurveSpec& e, const EigenSymbol& phi, const ManinSymbolSpace& space);
Json lift_certificate(const CurveSpec& e, const OverconvergentSymbol& lift);
Json l_invariant_certificate(const CurveSpec& e, const OverconvergentSymbol& lift, const LInvariantResult& r,
                             const Padic& tate_value, long compared_precision);
Json darmon_certificate(const DarmonResult& r);
Json heegner_certificate(const CurveSpec& e, const HeegnerResult& r);
Json recognition_certificate(const CurveSpec& e, const Int& p, const Int& D, const LocalPoint& P,
                             const QuadExt& elliptic_log, const Recognition& r, long prec);

struct VerifyReport {
  bool ok = true;
  std::string kind;
  std::vector<std::pair<std::string, bool>> checks;
  void add(const std::string& name, bool pass) {
    checks.emplace_back(name, pass);
    ok = ok && pass;
  }
};

// re-checks every residual stored in a certificate; never recomputes an overconvergent lift
VerifyReport verify_certificate(const Json& cert);

// canonical serialisation: sorted keys, two-space indent, trailing newline
std::string dump_certificate(const Json& cert);

}  // namespace darmon
