#include "darmon/operations.hpp"

#include <fstream>
#include <sstream>

#include "darmon/selftest.hpp"

namespace darmon {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t[]"), b = s.find_last_not_of(" \t[]");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::string cusp_str(const Cusp& c) { return c.is_infinity() ? "oo" : c.value().get_str(); }

void require_prime(const RunConfig& o) {
  if (o.p < 5 || !is_prime(Int(o.p))) throw PreconditionError("--p must be a prime >= 5");
}

int sign_or_plus(const RunConfig& o) { return o.sign == 0 ? 1 : o.sign; }

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded()) throw PreconditionError(path + " is not valid JSON");
  return j;
}

RunOutcome run_eigensymbol(const RunConfig& o) {
  CurveSpec e = resolve_curve(o);
  int sign = sign_or_plus(o);
  auto space = ManinSymbolSpace::build(e.conductor.get_si(), sign);
  EigenSymbol phi = eigensymbol_for_curve(e, sign);
  return {eigensymbol_certificate(e, phi, space), "eigensymbol of level " + e.conductor.get_str(), 0};
}

RunOutcome run_lift(const RunConfig& o) {
  require_prime(o);
  CurveSpec e = resolve_curve(o);
  long M = o.moments ? o.moments : 10;
  bool hit = false;
  auto lift = cached_lift(resolve_cache(o), e, Int(o.p), M, sign_or_plus(o), &hit);
  Json cert = lift_certificate(e, *lift);
  if (o.depth > 0) {
    Json paths = Json::array();
    QuadExt tau = standard_point(Int(o.p), M + 4);
    for (const auto& [r, s] : std::vector<std::pair<Cusp, Cusp>>{{Cusp::infinity(), Cusp::of(0, 1)},
                                                                {Cusp::of(1, 3), Cusp::of(2, 7)}}) {
      BoundaryMeasure mu(lift->symbol_ptr(), Int(o.p), r, s);
      IntegralResult a = mult_integral_riemann(mu, tau, o.depth);
      IntegralResult b = mult_integral_moments(*lift, r, s, tau);
      long k = std::min({o.depth, M - 1, a.precision, b.precision});
      paths.push_back(Json{{"path", Json::array({cusp_str(r), cusp_str(s)})},
                           {"compared_precision", std::to_string(k)},
                           {"agree", a.ord == b.ord && a.log.equals_mod(b.log, k)}});
    }
    cert["oracle"] = Json{{"depth", std::to_string(o.depth)}, {"tau", to_json(tau)}, {"paths", paths}};
  }
  return {cert, hit ? "lift loaded from cache" : "lift computed", 0};
}

RunOutcome run_l_invariant(const RunConfig& o) {
  require_prime(o);
  CurveSpec e = resolve_curve(o);
  long M = o.moments ? o.moments : 10;
  auto lift = cached_lift(resolve_cache(o), e, Int(o.p), M, sign_or_plus(o));
  LInvariantResult r = compute_L_invariant(lift);
  Padic t = tate_L_invariant(e, Int(o.p), M + 2);
  bool same = r.value.equals_mod(t, M - 2);
  return {l_invariant_certificate(e, *lift, r, t, M - 2),
          std::string("L-invariant ") + (same ? "matches" : "does not match") + " log q / ord q modulo p^" +
              std::to_string(M - 2),
          0};
}

RunOutcome run_darmon(const RunConfig& o) {
  require_prime(o);
  DarmonRequest req;
  req.curve = resolve_curve(o);
  req.p = o.p;
  req.D = o.disc;
  req.moments = o.moments ? o.moments : 12;
  if (o.character != "trivial") {
    if (o.character.rfind("genus:", 0) != 0) throw PreconditionError("--character must be trivial or genus:D1,D2");
    auto parts = split(o.character.substr(6), ',');
    if (parts.size() != 2) throw PreconditionError("--character genus:D1,D2 needs two discriminants");
    req.d1 = from_string(trim(parts[0]));
    req.d2 = from_string(trim(parts[1]));
  }
  if (req.D <= 0) throw PreconditionError("--disc must be a positive discriminant");
  auto data = narrow_class_data(req.D);
  bool trivial = (req.d1 == 1 && req.d2 == 1) || req.d1 == req.D || req.d2 == req.D;
  int sign = character_sign(data, trivial ? trivial_character(data) : genus_character(data, req.d1, req.d2));
  if (o.sign != 0 && o.sign != sign)
    throw PreconditionError("sign " + std::to_string(o.sign) + " conflicts with the sign forced by the character");
  if (req.moments < 6) throw PreconditionError("Darmon points need at least 6 moments");
  auto lift = cached_lift(resolve_cache(o), req.curve, req.p, req.moments, sign);
  DarmonResult r = darmon_point(req, lift);
  return {darmon_certificate(r), "recognition: " + to_string(r.recognition.outcome), 0};
}

RunOutcome run_heegner(const RunConfig& o) {
  CurveSpec e = resolve_curve(o);
  HeegnerResult r = heegner_point(e, Int(o.disc));
  return {heegner_certificate(e, r), r.matched ? "heegner trace matches a rational point" : "heegner trace unmatched",
          0};
}

RunOutcome run_recognize(const RunConfig& o) {
  if (o.certificate.empty()) throw PreconditionError("recognize needs a darmon-point certificate");
  Json src = read_json(o.certificate);
  if (src.value("kind", "") != "darmon-point") throw PreconditionError("recognize reads darmon-point certificates");
  CurveSpec e = curve_from_json(src.at("curve"));
  Int p = int_from_json(src.at("inputs").at("p"));
  Int D = int_from_json(src.at("inputs").at("D"));
  const Json& res = src.at("result");
  long stored = std::stol(res.at("precision").get<std::string>());
  long prec = o.precision > 0 ? std::min(o.precision, stored) : stored;
  LocalPoint P = local_point_from_json(res.at("point"), p);
  QuadExt elog = quadext_from_json(res.at("elliptic_log"), p);
  TateCurveData tate = tate_parameter(e, p, std::stol(res.at("tate").at("precision").get<std::string>()));
  std::vector<Int> fields = {o.disc != 0 ? Int(o.disc) : D};
  Recognition r = recognize_point(e, tate, elog, P, fields, prec, o.bound);
  return {recognition_certificate(e, p, D, P, elog, r, prec), "recognition: " + to_string(r.outcome), 0};
}

RunOutcome run_selftest(const RunConfig& o) {
  SuiteOptions s;
  s.reduced = o.reduced;
  s.golden_dir = o.golden_dir;
  s.only = o.only;
  std::ostringstream log;
  s.on_result = [&](const CheckResult& r) {
    log << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << ": " << r.detail << "\n";
  };
  Json cert = selftest_certificate(run_acceptance(s), o.reduced);
  bool all = cert.at("result").at("all_pass").get<bool>();
  std::string msg = log.str();
  if (!msg.empty() && msg.back() == '\n') msg.pop_back();
  return {cert, msg, all ? 0 : 1};
}

}  // namespace

CurveSpec resolve_curve(const RunConfig& o) {
  if (!o.curve_file.empty()) {
    std::ifstream in(o.curve_file);
    if (!in) throw PreconditionError("cannot open curve file " + o.curve_file);
    auto curves = parse_curve_records(in);
    if (curves.empty()) throw PreconditionError("no curve records in " + o.curve_file);
    for (const auto& c : curves)
      if (c.label == o.curve) return c;
    return curves.front();
  }
  auto parts = split(o.curve, ',');
  if (parts.size() == 5) {
    std::vector<Int> a;
    for (auto& t : parts) a.push_back(from_string(trim(t)));
    return make_curve("custom", a[0], a[1], a[2], a[3], a[4]);
  }
  return curve_from_label(o.curve);
}

Cache resolve_cache(const RunConfig& o) {
  if (o.no_cache) return Cache();
  if (!o.cache_dir.empty()) return Cache(o.cache_dir);
  return Cache(Cache::default_dir());
}

const std::vector<std::string>& operation_names() {
  static const std::vector<std::string> names = {"eigensymbol",   "lift",      "l-invariant", "darmon-point",
                                                 "heegner-point", "recognize", "selftest"};
  return names;
}

RunOutcome run_operation(const std::string& name, const RunConfig& cfg) {
  if (name == "eigensymbol") return run_eigensymbol(cfg);
  if (name == "lift") return run_lift(cfg);
  if (name == "l-invariant") return run_l_invariant(cfg);
  if (name == "darmon-point") return run_darmon(cfg);
  if (name == "heegner-point") return run_heegner(cfg);
  if (name == "recognize") return run_recognize(cfg);
  if (name == "selftest") return run_selftest(cfg);
  throw PreconditionError("unknown operation " + name);
}

}  // namespace darmon
