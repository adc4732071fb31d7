#include "darmon/certificate.hpp"

#include <sstream>

namespace darmon {

namespace {

std::string str(long x) { return std::to_string(x); }
long to_long(const Json& j) { return std::stol(j.get<std::string>()); }
unsigned complex_digits() { return static_cast<unsigned>(complex_precision_bits() * 0.30103); }

Real real_from(const std::string& s) { return Real(s); }

long agreement(const QuadExt& a, const QuadExt& b) {
  QuadExt d = a - b;
  return d.is_zero() ? d.abs_precision() : d.valuation();
}

bool point_residual_ok(const LocalCurve& c, const LocalPoint& P, long k) {
  if (P.inf) return true;
  QuadExt r = residual(c, P);
  long scale = std::min(0L, 3 * P.x.valuation());
  return r.is_zero() ? r.abs_precision() >= k + scale : r.valuation() >= k + scale;
}

bool local_points_agree(const LocalPoint& a, const LocalPoint& b, long k) {
  if (a.inf || b.inf) return a.inf == b.inf;
  if (a.x.valuation() < 0 || b.x.valuation() < 0) return agreement(-(a.x / a.y), -(b.x / b.y)) >= k;
  return agreement(a.x, b.x) >= k && agreement(a.y, b.y) >= k;
}

bool on_curve_quadratic(const CurveSpec& e, const Int& D, const QuadPoint& P) {
  if (P.inf) return true;
  Rat Dq(D);
  auto mul = [&](const QuadRat& a, const QuadRat& b) { return QuadRat{a.u * b.u + Dq * a.v * b.v, a.u * b.v + a.v * b.u}; };
  auto add = [](const QuadRat& a, const QuadRat& b) { return QuadRat{a.u + b.u, a.v + b.v}; };
  auto sc = [](const QuadRat& a, const Rat& c) { return QuadRat{a.u * c, a.v * c}; };
  const QuadRat &x = P.x, &y = P.y;
  QuadRat lhs = add(add(mul(y, y), sc(mul(x, y), Rat(e.a1))), sc(y, Rat(e.a3)));
  QuadRat x2 = mul(x, x);
  QuadRat rhs = add(add(mul(x2, x), sc(x2, Rat(e.a2))), add(sc(x, Rat(e.a4)), QuadRat{Rat(e.a6), 0}));
  return lhs.u == rhs.u && lhs.v == rhs.v;
}

Json recognition_json(const Recognition& r) {
  Json j;
  j["outcome"] = to_string(r.outcome);
  j["field_disc"] = to_json(r.field_disc);
  j["global_point"] = to_json(r.global);
  j["multiplier"] = to_json(r.multiplier);
  Json poly = Json::array();
  for (const Int& c : r.polynomial) poly.push_back(to_json(c));
  j["polynomial"] = poly;
  j["agreement"] = str(r.agreement);
  return j;
}

void verify_recognition(VerifyReport& rep, const CurveSpec& e, const Int& p, const Json& rj, const QuadExt& elog,
                        const LocalPoint& point) {
  std::string outcome = rj.at("outcome").get<std::string>();
  long ag = to_long(rj.at("agreement"));
  if (outcome == "matched" || outcome == "matched_multiple") {
    Int f = int_from_json(rj.at("field_disc"));
    QuadPoint Q = quad_point_from_json(rj.at("global_point"));
    rep.add("recognition.global_point_on_curve", on_curve_quadratic(e, f, Q));
    Rat k = rat_from_json(rj.at("multiplier"));
    long prec = ag + 6;
    QuadExt sq = f == 1 ? QuadExt::from_int(p, 1, prec + 12) : sqrt_quadext(f, p, prec + 12);
    LocalCurve lc = LocalCurve::from(e, p, prec + 12);
    QuadExt lq = formal_elliptic_log(e, lc, to_local(Q, sq, prec + 12), prec + 6);
    rep.add("recognition.elliptic_log_relation", agreement(elog, QuadExt::from_rat(p, k, prec + 8) * lq) >= ag);
    rep.add("recognition.multiplier_sign", outcome != "matched" || abs(k) == 1);
  } else if (outcome == "algebraic") {
    std::vector<Int> c;
    for (const auto& x : rj.at("polynomial")) c.push_back(int_from_json(x));
    QuadExt acc = QuadExt::zero(p, ag + 2);
    for (size_t i = c.size(); i-- > 0;) acc = acc * point.x + QuadExt::from_int(p, c[i], ag + 2);
    rep.add("recognition.polynomial_vanishes", acc.is_zero() || acc.valuation() >= ag);
  } else if (outcome == "torsion") {
    rep.add("recognition.torsion", elog.is_zero() || elog.valuation() >= ag);
  }
}

}  // namespace

Json to_json(const Int& x) { return x.get_str(); }

Json to_json(const Rat& x) {
  Rat y = x;
  y.canonicalize();
  return y.get_str();
}

Json to_json(const Padic& x) {
  return Json{{"val", str(x.valuation())}, {"unit", x.unit().get_str()}, {"rel", str(x.rel_precision())}};
}

Json to_json(const QuadExt& x) {
  return Json{{"val", str(x.valuation())},
              {"a", x.unit_a().get_str()},
              {"b", x.unit_b().get_str()},
              {"rel", str(x.rel_precision())}};
}

Json to_json(const Mat2& g) { return Json::array({to_json(g.a), to_json(g.b), to_json(g.c), to_json(g.d)}); }

Json to_json(const QuadForm& f) { return Json::array({to_json(f.a), to_json(f.b), to_json(f.c)}); }

Json to_json(const CurveSpec& e) {
  return Json{{"label", e.label},
              {"a_invariants", Json::array({to_json(e.a1), to_json(e.a2), to_json(e.a3), to_json(e.a4), to_json(e.a6)})},
              {"conductor", to_json(e.conductor)}};
}

Json to_json(const LocalPoint& P) {
  if (P.inf) return Json{{"infinity", true}};
  return Json{{"infinity", false}, {"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

Json to_json(const QuadPoint& P) {
  if (P.inf) return Json{{"infinity", true}};
  return Json{{"infinity", false},
              {"x", Json::array({to_json(P.x.u), to_json(P.x.v)})},
              {"y", Json::array({to_json(P.y.u), to_json(P.y.v)})}};
}

Json to_json(const Complex& z) {
  unsigned d = complex_digits();
  return Json{{"re", to_decimal(z.re, static_cast<int>(d))}, {"im", to_decimal(z.im, static_cast<int>(d))},
              {"digits", str(d)}};
}

Json to_json(const BranchValue& v) { return Json{{"ord", to_json(v.ord)}, {"log", to_json(v.log)}}; }

Int int_from_json(const Json& j) { return from_string(j.get<std::string>()); }

Rat rat_from_json(const Json& j) {
  Rat r(j.get<std::string>());
  r.canonicalize();
  return r;
}

Padic padic_from_json(const Json& j, const Int& p) {
  return Padic::make(p, to_long(j.at("val")), int_from_json(j.at("unit")), to_long(j.at("rel")));
}

QuadExt quadext_from_json(const Json& j, const Int& p) {
  return QuadExt::make(PrimeField::get(p), to_long(j.at("val")), int_from_json(j.at("a")), int_from_json(j.at("b")),
                       to_long(j.at("rel")));
}

Mat2 mat_from_json(const Json& j) {
  return Mat2{int_from_json(j.at(0)), int_from_json(j.at(1)), int_from_json(j.at(2)), int_from_json(j.at(3))};
}

QuadForm form_from_json(const Json& j) { return QuadForm{int_from_json(j.at(0)), int_from_json(j.at(1)), int_from_json(j.at(2))}; }

CurveSpec curve_from_json(const Json& j) {
  const Json& a = j.at("a_invariants");
  return make_curve(j.at("label").get<std::string>(), int_from_json(a.at(0)), int_from_json(a.at(1)),
                    int_from_json(a.at(2)), int_from_json(a.at(3)), int_from_json(a.at(4)));
}

LocalPoint local_point_from_json(const Json& j, const Int& p) {
  LocalPoint P;
  if (j.at("infinity").get<bool>()) return P;
  P.inf = false;
  P.x = quadext_from_json(j.at("x"), p);
  P.y = quadext_from_json(j.at("y"), p);
  return P;
}

QuadPoint quad_point_from_json(const Json& j) {
  QuadPoint P;
  if (j.at("infinity").get<bool>()) return P;
  P.inf = false;
  P.x = {rat_from_json(j.at("x").at(0)), rat_from_json(j.at("x").at(1))};
  P.y = {rat_from_json(j.at("y").at(0)), rat_from_json(j.at("y").at(1))};
  return P;
}

Complex complex_from_json(const Json& j) {
  return Complex(real_from(j.at("re").get<std::string>()), real_from(j.at("im").get<std::string>()));
}

BranchValue branch_from_json(const Json& j, const Int& p) {
  return BranchValue{rat_from_json(j.at("ord")), quadext_from_json(j.at("log"), p)};
}

Json branch_choices(const Int& p) {
  Json j{{"log", "iwasawa"},
         {"qp2", "Q_p(w), w^2 = nu, nu the least quadratic non-residue"},
         {"sqrt_D", "root whose w-coordinate residue lies in [1, (p-1)/2]"},
         {"tau", "(-b + sqrt D)/(2a)"},
         {"normalization", "eigensymbol values primitive integral"}};
  if (p > 2) j["nu"] = to_json(PrimeField::get(p)->nu);
  return j;
}

Json envelope(const std::string& kind, const CurveSpec& e) {
  return Json{{"schema", kCertificateSchema}, {"version", str(kCertificateVersion)}, {"kind", kind}, {"curve", to_json(e)}};
}

Json eigensymbol_certificate(const CurveSpec& e, const EigenSymbol& phi, const ManinSymbolSpace& space) {
  Json c = envelope("eigensymbol", e);
  c["inputs"] = Json{{"sign", str(phi.sign)}};
  Json gens = Json::array();
  for (size_t i = 0; i < phi.p1->size(); ++i) {
    const auto& r = phi.p1->rep(i);
    gens.push_back(Json::array({str(r.first), str(r.second), to_json(phi.values[i])}));
  }
  Json eig = Json::object();
  for (const auto& [l, a] : phi.eigenvalues) eig[str(l)] = str(a);
  c["result"] = Json{{"level", str(phi.level)},
                     {"sign", str(phi.sign)},
                     {"normalization", to_json(phi.scalar)},
                     {"generators", gens},
                     {"eigenvalues", eig},
                     {"space_dimension", str(static_cast<long>(space.dimension()))},
                     {"cuspidal_dimension", str(static_cast<long>(space.cuspidal_dimension()))}};
  return c;
}

Json lift_certificate(const CurveSpec& e, const OverconvergentSymbol& lift) {
  Json c = envelope("lift", e);
  const EigenSymbol& phi = lift.symbol();
  c["inputs"] = Json{{"p", to_json(lift.prime())}, {"moments", str(lift.moment_count())}, {"sign", str(phi.sign)}};
  c["branches"] = branch_choices(lift.prime());
  Json mom = Json::array();
  for (const auto& v : lift.generator_moments()) {
    Json row = Json::array();
    for (const Int& x : v) row.push_back(to_json(x));
    mom.push_back(row);
  }
  c["result"] = Json{{"normalization", to_json(phi.scalar)},
                     {"ap", str(lift.ap())},
                     {"iterations", str(lift.iterations())},
                     {"modulus_exponent", str(lift.moment_count())},
                     {"generator_moments", mom}};
  return c;
}

Json l_invariant_certificate(const CurveSpec& e, const OverconvergentSymbol& lift, const LInvariantResult& r,
                             const Padic& tate_value, long compared_precision) {
  Json c = envelope("l-invariant", e);
  const Int& p = lift.prime();
  c["inputs"] = Json{{"p", to_json(p)}, {"moments", str(lift.moment_count())}, {"sign", str(lift.symbol().sign)}};
  c["branches"] = branch_choices(p);
  Json rows = Json::array();
  for (size_t i = 0; i < r.gammas.size(); ++i)
    rows.push_back(Json{{"gamma", to_json(r.gammas[i])}, {"d", to_json(r.d[i])}});
  long ag = 0;
  {
    Padic d = r.value - tate_value;
    ag = d.is_zero() ? d.abs_precision() : d.valuation();
  }
  c["result"] = Json{{"normalization", to_json(lift.symbol().scalar)},
                     {"automorphic", to_json(r.value)},
                     {"tate", to_json(tate_value)},
                     {"precision", str(r.precision)},
                     {"compared_precision", str(compared_precision)},
                     {"agreement", str(ag)},
                     {"consistent", r.consistent},
                     {"periods", rows}};
  c["checks"] = Json{{"matches_tate", ag >= compared_precision}, {"consistent", r.consistent}};
  return c;
}

Json darmon_certificate(const DarmonResult& r) {
  Json c = envelope("darmon-point", r.request.curve);
  const Int& p = r.request.p;
  c["inputs"] = Json{{"p", to_json(p)},
                     {"D", to_json(r.request.D)},
                     {"moments", str(r.request.moments)},
                     {"character", r.character.str()},
                     {"sign", str(r.sign)}};
  c["branches"] = branch_choices(p);
  Json classes = Json::array();
  for (const auto& cp : r.classes)
    classes.push_back(Json{{"form", to_json(cp.form)},
                           {"class_index", str(cp.class_index)},
                           {"chi", str(cp.chi)},
                           {"tau", to_json(cp.tau)},
                           {"gamma", to_json(cp.gamma)},
                           {"period", to_json(cp.period)},
                           {"elliptic_log", to_json(cp.elliptic_log)},
                           {"point", to_json(cp.point)}});
  Json chi = Json::array();
  for (int v : r.character.values) chi.push_back(str(v));
  c["result"] = Json{{"normalization", to_json(r.normalization)},
                     {"lift_iterations", str(r.lift_iterations)},
                     {"h_plus", str(r.h_plus)},
                     {"character_values", chi},
                     {"precision", str(r.precision)},
                     {"tate", Json{{"q", to_json(r.tate.q)},
                                   {"split", r.tate.split},
                                   {"alpha2", to_json(r.tate.alpha2)},
                                   {"u", to_json(r.tate.u)},
                                   {"precision", str(r.tate.prec)}}},
                     {"classes", classes},
                     {"combined_period", to_json(r.combined)},
                     {"elliptic_log", to_json(r.elliptic_log)},
                     {"point", to_json(r.point)},
                     {"model", r.tate.split ? "E over Q_p (split)" : "E over Q_{p^2} (nonsplit, unramified twist)"},
                     {"frobenius_eigenvalue", str(r.frobenius_eigenvalue)},
                     {"recognition", recognition_json(r.recognition)}};
  c["checks"] = Json{{"group_law", r.group_law_ok},
                     {"orientation_inverse", r.inverse_ok},
                     {"conjugate_root", r.conjugate_ok},
                     {"base_point", r.base_point_ok}};
  return c;
}

Json heegner_certificate(const CurveSpec& e, const HeegnerResult& r) {
  Json c = envelope("heegner-point", e);
  c["inputs"] = Json{{"D", to_json(r.D)}, {"precision_bits", str(complex_precision_bits())}};
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back(Json{{"form", to_json(t.form)},
                         {"class_index", str(t.class_index)},
                         {"z", to_json(t.z)},
                         {"J", to_json(t.J)},
                         {"terms", str(static_cast<long>(t.terms))},
                         {"tail_bound", to_decimal(t.tail, 6)}});
  const PeriodLattice& L = r.lattice;
  Json lat{{"omega_plus", to_json(L.omega_plus)},
           {"omega_minus", to_json(L.omega_minus)},
           {"w1", to_json(L.w1)},
           {"w2", to_json(L.w2)},
           {"scalar_plus", to_json(L.scalar_plus)},
           {"scalar_minus", to_json(L.scalar_minus)},
           {"scalars_found", L.scalars_found},
           {"loops", Json::array()},
           {"terms", str(L.terms)},
           {"ratio_real_part", to_decimal(L.ratio_real_part, 6)},
           {"consistency_error", to_decimal(L.consistency_error, 6)},
           {"j_error", to_decimal(L.j_error, 6)},
           {"conjugation_error", to_decimal(L.conjugation_error, 6)}};
  for (const Mat2& g : L.loops) lat["loops"].push_back(to_json(g));
  Json pt = r.point.inf ? Json{{"infinity", true}}
                        : Json{{"infinity", false}, {"x", to_json(r.point.x)}, {"y", to_json(r.point.y)}};
  Json glob = r.matched ? Json{{"x", to_json(r.global.x)}, {"y", to_json(r.global.y)}} : Json();
  c["result"] = Json{{"beta", to_json(r.beta)},
                     {"class_number", str(r.class_number)},
                     {"terms", terms},
                     {"trace", to_json(r.trace)},
                     {"point", pt},
                     {"residual", to_decimal(r.point.residual, 6)},
                     {"lattice", lat},
                     {"doubling_error", to_decimal(r.doubling_error, 6)},
                     {"modularity_error", to_decimal(r.modularity_error, 6)},
                     {"permutation_error", to_decimal(r.permutation_error, 6)},
                     {"matched", r.matched},
                     {"global_point", glob},
                     {"distance", to_decimal(r.distance, 6)}};
  return c;
}

Json recognition_certificate(const CurveSpec& e, const Int& p, const Int& D, const LocalPoint& P,
                             const QuadExt& elliptic_log, const Recognition& r, long prec) {
  Json c = envelope("recognize", e);
  c["inputs"] = Json{{"p", to_json(p)}, {"D", to_json(D)}, {"precision", str(prec)}};
  c["branches"] = branch_choices(p);
  c["result"] = Json{{"point", to_json(P)}, {"elliptic_log", to_json(elliptic_log)}, {"recognition", recognition_json(r)}};
  return c;
}

std::string dump_certificate(const Json& cert) { return cert.dump(2) + "\n"; }

namespace {

void verify_eigensymbol(VerifyReport& rep, const CurveSpec& e, const Json& res) {
  long N = to_long(res.at("level"));
  int sign = static_cast<int>(to_long(res.at("sign")));
  rep.add("level_is_conductor", Int(N) == e.conductor);
  P1List p1(N);
  std::vector<Int> vals(p1.size());
  bool complete = res.at("generators").size() == p1.size();
  for (const auto& g : res.at("generators")) {
    long i = p1.index(Int(to_long(g.at(0))), Int(to_long(g.at(1))));
    if (i < 0) complete = false;
    else vals[static_cast<size_t>(i)] = int_from_json(g.at(2));
  }
  rep.add("generators_cover_p1", complete);
  bool rel = complete;
  for (size_t i = 0; rel && i < p1.size(); ++i) {
    size_t j = p1.tau_image(i);
    rel = vals[i] + vals[p1.s_image(i)] == 0 && vals[i] + vals[j] + vals[p1.tau_image(j)] == 0 &&
          vals[i] == sign * vals[p1.star(i)];
  }
  rep.add("manin_relations", rel);
  Int content = 0;
  for (const Int& v : vals) content = gcd(content, v);
  rep.add("primitive", content == 1);
  bool eig = true;
  for (const auto& [l, a] : res.at("eigenvalues").items())
    eig = eig && ap(e, std::stol(l)) == to_long(a);
  rep.add("eigenvalues_match_point_counts", eig);
}

void verify_lift(VerifyReport& rep, const CurveSpec& e, const Json& cert) {
  const Json& in = cert.at("inputs");
  const Json& res = cert.at("result");
  Int p = int_from_json(in.at("p"));
  long M = to_long(in.at("moments"));
  int sign = static_cast<int>(to_long(in.at("sign")));
  auto phi = std::make_shared<const EigenSymbol>(eigensymbol_for_curve(e, sign));
  rep.add("normalization", rat_from_json(res.at("normalization")) == phi->scalar);
  std::vector<std::vector<Int>> mom;
  for (const auto& row : res.at("generator_moments")) {
    std::vector<Int> v;
    for (const auto& x : row) v.push_back(int_from_json(x));
    mom.push_back(v);
  }
  bool spec = mom.size() == phi->values.size();
  Int pm = ipow(p, static_cast<unsigned long>(M));
  for (size_t i = 0; spec && i < mom.size(); ++i) spec = !mom[i].empty() && mod(mom[i][0] - phi->values[i], pm) == 0;
  rep.add("specialization", spec);
  try {
    OverconvergentSymbol::from_moments(phi, p, M, mom, to_long(res.at("iterations")));
    rep.add("up_eigen_relation", true);
  } catch (const Error&) {
    rep.add("up_eigen_relation", false);
  }
}

void verify_l_invariant(VerifyReport& rep, const CurveSpec& e, const Json& cert) {
  const Json& res = cert.at("result");
  Int p = int_from_json(cert.at("inputs").at("p"));
  long k = to_long(res.at("compared_precision"));
  Padic value = padic_from_json(res.at("automorphic"), p);
  TateCurveData t = tate_parameter(e, p, k + 4);
  Padic lq = padic_log_iwasawa(t.q) / Padic::from_int(p, t.q.valuation(), k + 6);
  rep.add("tate_oracle", value.equals_mod(lq, k));
  bool rows = true;
  for (const auto& row : res.at("periods")) {
    BranchValue d = branch_from_json(row.at("d"), p);
    if (d.ord == 0) continue;
    Padic l = d.log.coord_a() / Padic::from_rat(p, d.ord, d.log.abs_precision() + 10);
    rows = rows && l.equals_mod(value, std::min(k, l.abs_precision()));
  }
  rep.add("period_ratios", rows);
}

void verify_darmon(VerifyReport& rep, const CurveSpec& e, const Json& cert) {
  const Json& in = cert.at("inputs");
  const Json& res = cert.at("result");
  Int p = int_from_json(in.at("p"));
  Int D = int_from_json(in.at("D"));
  long prec = to_long(res.at("precision"));
  long tprec = to_long(res.at("tate").at("precision"));
  TateCurveData t = tate_parameter(e, p, tprec);
  rep.add("tate_parameter", t.q.equals_mod(padic_from_json(res.at("tate").at("q"), p), tprec));
  LocalCurve lc = LocalCurve::from(e, p, tprec);
  BranchValue sum{0, QuadExt::zero(p, prec + 10)};
  LocalPoint sum_pts;
  bool emb = true, pts = true, on = true;
  for (const auto& cj : res.at("classes")) {
    QuadForm f = form_from_json(cj.at("form"));
    Mat2 g = mat_from_json(cj.at("gamma"));
    QuadExt tau = quadext_from_json(cj.at("tau"), p);
    long k = tau.abs_precision() - 2;
    auto q = [&](const Int& x) { return QuadExt::from_int(p, x, k + 4); };
    QuadExt root = q(f.a) * tau * tau + q(f.b) * tau + q(f.c);
    QuadExt fixed = q(g.c) * tau * tau + q(g.d - g.a) * tau - q(g.b);
    emb = emb && f.disc() == D && g.det() == 1 && agreement(root, QuadExt::zero(p, k)) >= k &&
          agreement(fixed, QuadExt::zero(p, k)) >= k;
    BranchValue per = branch_from_json(cj.at("period"), p);
    int chi = static_cast<int>(to_long(cj.at("chi")));
    LocalPoint P = local_point_from_json(cj.at("point"), p);
    LocalPoint R = tate_map(t, period_value(p, per, tprec - 2));
    pts = pts && local_points_agree(P, R, prec - 2);
    on = on && point_residual_ok(lc, P, prec - 2);
    sum = sum + per.scaled(Rat(chi));
    sum_pts = add(lc, sum_pts, chi == 1 ? P : neg(lc, P));
  }
  rep.add("embeddings", emb);
  rep.add("class_points_from_periods", pts);
  rep.add("class_points_on_curve", on);
  BranchValue comb = branch_from_json(res.at("combined_period"), p);
  rep.add("combined_period", comb.ord == sum.ord && agreement(comb.log, sum.log) >= prec);
  LocalPoint P = local_point_from_json(res.at("point"), p);
  rep.add("combined_point_on_curve", point_residual_ok(lc, P, prec - 2));
  rep.add("group_law", local_points_agree(P, sum_pts, prec - 2));
  QuadExt elog = quadext_from_json(res.at("elliptic_log"), p);
  rep.add("elliptic_log", agreement(elog, tate_elliptic_log(t, comb)) >= prec - 2);
  verify_recognition(rep, e, p, res.at("recognition"), elog, P);
}

void verify_heegner(VerifyReport& rep, const CurveSpec& e, const Json& cert) {
  const Json& res = cert.at("result");
  Int D = int_from_json(cert.at("inputs").at("D"));
  unsigned bits = static_cast<unsigned>(to_long(cert.at("inputs").at("precision_bits")));
  set_complex_precision_bits(bits);
  Real tol("1e-25");
  PeriodLattice L = complex_periods(e);
  const Json& lat = res.at("lattice");
  rep.add("lattice_omega_plus", (L.omega_plus - complex_from_json(lat.at("omega_plus"))).abs() < tol);
  rep.add("lattice_omega_minus", (L.omega_minus - complex_from_json(lat.at("omega_minus"))).abs() < tol);
  rep.add("omega_ratio_imaginary", L.ratio_real_part < Real("1e-20"));
  Complex tr;
  bool zs = true;
  Real sqd = boost::multiprecision::sqrt(Real(Int(-D).get_str()));
  for (const auto& tj : res.at("terms")) {
    QuadForm f = form_from_json(tj.at("form"));
    Complex z = complex_from_json(tj.at("z"));
    Real two_a(Int(2 * f.a).get_str());
    Complex expect(-Real(f.b.get_str()) / two_a, sqd / two_a);
    zs = zs && f.disc() == D && mod(f.a, e.conductor) == 0 && (z - expect).abs() < tol;
    tr = tr + complex_from_json(tj.at("J"));
  }
  rep.add("heegner_points", zs);
  rep.add("trace", (tr - complex_from_json(res.at("trace"))).abs() < tol);
  ComplexPoint P = weierstrass_map(e, L, tr);
  const Json& pj = res.at("point");
  bool same = P.inf == pj.at("infinity").get<bool>();
  if (same && !P.inf)
    same = (P.x - complex_from_json(pj.at("x"))).abs() < Real("1e-20") &&
           (P.y - complex_from_json(pj.at("y"))).abs() < Real("1e-20");
  rep.add("weierstrass_map", same);
  rep.add("point_on_curve", P.inf || P.residual < Real("1e-20"));
  if (res.at("matched").get<bool>()) {
    RatPoint G;
    G.inf = false;
    G.x = rat_from_json(res.at("global_point").at("x"));
    G.y = rat_from_json(res.at("global_point").at("y"));
    rep.add("global_point_on_curve", on_curve(e, G));
    Real dist = (P.x - Complex(Real(G.x.get_num().get_str()) / Real(G.x.get_den().get_str()))).abs() +
                (P.y - Complex(Real(G.y.get_num().get_str()) / Real(G.y.get_den().get_str()))).abs();
    rep.add("global_match", dist < Real("1e-15"));
  }
}

void verify_recognize(VerifyReport& rep, const CurveSpec& e, const Json& cert) {
  Int p = int_from_json(cert.at("inputs").at("p"));
  const Json& res = cert.at("result");
  LocalPoint P = local_point_from_json(res.at("point"), p);
  long prec = to_long(cert.at("inputs").at("precision"));
  rep.add("point_on_curve", point_residual_ok(LocalCurve::from(e, p, prec + 4), P, prec - 2));
  verify_recognition(rep, e, p, res.at("recognition"), quadext_from_json(res.at("elliptic_log"), p), P);
}

}  // namespace

VerifyReport verify_certificate(const Json& cert) {
  VerifyReport rep;
  try {
    rep.kind = cert.at("kind").get<std::string>();
    rep.add("schema", cert.at("schema").get<std::string>() == kCertificateSchema);
    rep.add("version", cert.at("version").get<std::string>() == std::to_string(kCertificateVersion));
    if (!rep.ok) return rep;
    if (rep.kind == "selftest") {
      const Json& res = cert.at("result").at("criteria");
      rep.add("criteria_listed", res.is_array() && !res.empty());
      for (const Json& c : res) rep.add("criterion_" + c.at("id").get<std::string>(), c.at("pass").get<bool>());
      return rep;
    }
    CurveSpec e = curve_from_json(cert.at("curve"));
    rep.add("conductor", to_json(e.conductor) == cert.at("curve").at("conductor"));
    if (rep.kind == "eigensymbol") verify_eigensymbol(rep, e, cert.at("result"));
    else if (rep.kind == "lift") verify_lift(rep, e, cert);
    else if (rep.kind == "l-invariant") verify_l_invariant(rep, e, cert);
    else if (rep.kind == "darmon-point") verify_darmon(rep, e, cert);
    else if (rep.kind == "heegner-point") verify_heegner(rep, e, cert);
    else if (rep.kind == "recognize") verify_recognize(rep, e, cert);
    else rep.add("known_kind", false);
  } catch (const std::exception& ex) {
    rep.add(std::string("well_formed: ") + ex.what(), false);
  }
  return rep;
}

}  // namespace darmon
