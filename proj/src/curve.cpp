#include "darmon/curve.hpp"

#include <array>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>

namespace darmon {

namespace {

struct Model {
  Int a1, a2, a3, a4, a6;
};

Model transform(const Model& m, const Int& r, const Int& s, const Int& t) {
  Model o;
  o.a1 = m.a1 + 2 * s;
  o.a2 = m.a2 - s * m.a1 + 3 * r - s * s;
  o.a3 = m.a3 + r * m.a1 + 2 * t;
  o.a4 = m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t;
  o.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1;
  return o;
}

Invariants invariants_of(const Model& m) {
  Invariants v;
  v.b2 = m.a1 * m.a1 + 4 * m.a2;
  v.b4 = 2 * m.a4 + m.a1 * m.a3;
  v.b6 = m.a3 * m.a3 + 4 * m.a6;
  v.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
  if (v.disc != 0) {
    v.j = Rat(v.c4 * v.c4 * v.c4, v.disc);
    v.j.canonicalize();
  }
  return v;
}

Model model_of(const CurveSpec& e) { return {e.a1, e.a2, e.a3, e.a4, e.a6}; }

bool divides(const Int& q, const Int& x) { return mod(x, q) == 0; }

// roots of a monic cubic mod p by search, with multiplicities from synthetic division
std::vector<std::pair<Int, int>> cubic_roots(const Int& b, const Int& c, const Int& d, const Int& p) {
  std::vector<std::pair<Int, int>> out;
  for (Int x = 0; x < p; ++x) {
    std::vector<Int> poly{mod(d, p), mod(c, p), mod(b, p), 1};
    int mult = 0;
    while (poly.size() > 1) {
      Int v = 0;
      for (size_t i = poly.size(); i-- > 0;) v = mod(v * x + poly[i], p);
      if (v != 0) break;
      ++mult;
      std::vector<Int> q(poly.size() - 1);
      Int carry = 0;
      for (size_t i = poly.size(); i-- > 1;) {
        carry = mod(carry * x + poly[i], p);
        q[i - 1] = carry;
      }
      poly = q;
    }
    if (mult) out.push_back({x, mult});
  }
  return out;
}

LocalReduction tate_small_prime(Model m, const Int& p, long n) {
  LocalReduction r;
  r.p = p;
  r.disc_valuation = n;
  // move the singular point to (0, 0)
  bool found = false;
  for (Int x = 0; x < p && !found; ++x)
    for (Int y = 0; y < p && !found; ++y) {
      Int f = y * y + m.a1 * x * y + m.a3 * y - (x * x * x + m.a2 * x * x + m.a4 * x + m.a6);
      Int fx = m.a1 * y - (3 * x * x + 2 * m.a2 * x + m.a4);
      Int fy = 2 * y + m.a1 * x + m.a3;
      if (divides(p, f) && divides(p, fx) && divides(p, fy)) {
        m = transform(m, x, 0, y);
        found = true;
      }
    }
  if (!found) throw Error("no singular point found in Tate's algorithm");
  Invariants v = invariants_of(m);
  if (!divides(p, v.b2)) {
    r.conductor_exponent = 1;
    r.kodaira = "I" + std::to_string(n);
    // split iff the tangent cone y^2 + a1 x y - a2 x^2 factors over F_p
    Int disc = m.a1 * m.a1 + 4 * m.a2;
    bool split = false;
    for (Int z = 0; z < p; ++z)
      if (divides(p, z * z - disc)) split = true;
    if (p == 2) split = divides(p, m.a2);
    r.type = split ? ReductionType::Split : ReductionType::NonSplit;
    return r;
  }
  r.type = ReductionType::Additive;
  Int p2 = p * p, p3 = p2 * p;
  if (!divides(p2, m.a6)) {
    r.kodaira = "II";
    r.conductor_exponent = n;
    return r;
  }
  if (!divides(p3, v.b8)) {
    r.kodaira = "III";
    r.conductor_exponent = n - 1;
    return r;
  }
  if (!divides(p3, v.b6)) {
    r.kodaira = "IV";
    r.conductor_exponent = n - 2;
    return r;
  }
  // make p | a1, a2; p^2 | a3, a4; p^3 | a6
  found = false;
  for (Int s = 0; s < p && !found; ++s)
    for (Int t = 0; t < p2 && !found; ++t) {
      Model c = transform(m, 0, s, t);
      if (divides(p, c.a1) && divides(p, c.a2) && divides(p2, c.a3) && divides(p2, c.a4) && divides(p3, c.a6)) {
        m = c;
        found = true;
      }
    }
  if (!found) throw Error("Tate's algorithm: normalisation at step 6 failed");
  auto roots = cubic_roots(m.a2 / p, m.a4 / p2, m.a6 / p3, p);
  int maxmult = 0;
  Int root = 0;
  for (auto& [x, k] : roots)
    if (k > maxmult) maxmult = k, root = x;
  if (maxmult == 1 && roots.size() == 3) {
    r.kodaira = "I0*";
    r.conductor_exponent = n - 4;
    return r;
  }
  if (maxmult == 1) {
    r.kodaira = "I0*";
    r.conductor_exponent = n - 4;
    return r;
  }
  if (maxmult == 2) {
    m = transform(m, root * p, 0, 0);
    long k = 1;
    for (;;) {
      if (k % 2 == 1) {
        long e = (k + 3) / 2;
        Int pe = ipow(p, e);
        if (!divides(pe, m.a3) || !divides(pe * pe, m.a6)) throw Error("Tate's algorithm: I_m* loop lost divisibility");
        Int a3k = m.a3 / pe, a6k = m.a6 / (pe * pe);
        if (!divides(p, a3k * a3k + 4 * a6k)) break;
        Int y0 = (p == 2) ? mod(a6k, 2) : mod(-a3k * inv_mod(2, p), p);
        m = transform(m, 0, 0, y0 * pe);
      } else {
        long e = k / 2 + 1;
        Int pe = ipow(p, e);
        Int a21 = m.a2 / p, a4k = m.a4 / (pe * p), a6k = m.a6 / (pe * pe * p);
        if (!divides(p, a4k * a4k - 4 * a21 * a6k)) break;
        Int x0 = (p == 2) ? mod(a6k, 2) : mod(-a4k * inv_mod(2 * a21, p), p);
        m = transform(m, x0 * pe, 0, 0);
      }
      ++k;
    }
    r.kodaira = "I" + std::to_string(k) + "*";
    r.conductor_exponent = n - 4 - k;
    return r;
  }
  // triple root
  m = transform(m, root * p, 0, 0);
  Int p4 = p2 * p2;
  Int a32 = m.a3 / p2, a64 = m.a6 / p4;
  if (!divides(p, a32 * a32 + 4 * a64)) {
    r.kodaira = "IV*";
    r.conductor_exponent = n - 6;
    return r;
  }
  Int y0 = (p == 2) ? mod(a64, 2) : mod(-a32 * inv_mod(2, p), p);
  m = transform(m, 0, 0, y0 * p2);
  if (!divides(p4, m.a4)) {
    r.kodaira = "III*";
    r.conductor_exponent = n - 7;
    return r;
  }
  if (!divides(p4 * p2, m.a6)) {
    r.kodaira = "II*";
    r.conductor_exponent = n - 8;
    return r;
  }
  throw PreconditionError("model is not minimal at " + p.get_str());
}

}  // namespace

Invariants invariants(const CurveSpec& e) { return invariants_of(model_of(e)); }

LocalReduction local_reduction(const CurveSpec& e, const Int& p) {
  Invariants v = invariants(e);
  long n = vp(v.disc, p);
  if (n == 0) {
    LocalReduction r;
    r.p = p;
    r.kodaira = "I0";
    return r;
  }
  if (p == 2 || p == 3) return tate_small_prime(model_of(e), p, n);
  LocalReduction r;
  r.p = p;
  r.disc_valuation = n;
  long v4 = vp(v.c4, p), v6 = vp(v.c6, p);
  if (v4 >= 4 && v6 >= 6 && n >= 12) throw PreconditionError("model is not minimal at " + p.get_str());
  if (v4 == 0) {
    r.conductor_exponent = 1;
    r.kodaira = "I" + std::to_string(n);
    r.type = kronecker(-v.c6, p) == 1 ? ReductionType::Split : ReductionType::NonSplit;
    return r;
  }
  r.type = ReductionType::Additive;
  r.conductor_exponent = 2;
  r.kodaira = "additive";
  return r;
}

Int conductor(const CurveSpec& e) {
  Invariants v = invariants(e);
  Int n = 1;
  for (auto& [p, k] : factor(v.disc)) n *= ipow(p, local_reduction(e, p).conductor_exponent);
  return n;
}

CurveSpec make_curve(const std::string& label, const Int& a1, const Int& a2, const Int& a3, const Int& a4,
                     const Int& a6) {
  CurveSpec e{label, a1, a2, a3, a4, a6, 0};
  if (invariants(e).disc == 0) throw PreconditionError("singular curve " + label);
  e.conductor = conductor(e);
  return e;
}

CurveSpec curve_from_label(const std::string& label) {
  static const std::map<std::string, std::array<long, 5>> table = {
      {"11a1", {0, -1, 1, -10, -20}}, {"11a3", {0, -1, 1, 0, 0}},  {"14a1", {1, 0, 1, 4, -6}},
      {"15a1", {1, 1, 1, -10, -10}},  {"17a1", {1, -1, 1, -1, -14}}, {"19a1", {0, 1, 1, -9, -15}},
      {"37a1", {0, 0, 1, -1, 0}},     {"37b1", {0, 1, 1, -23, -50}}, {"43a1", {0, 1, 1, 0, 0}},
      {"53a1", {1, -1, 1, 0, 0}}};
  std::string key = label;
  if (!key.empty() && std::isalpha(static_cast<unsigned char>(key.back()))) key += "1";
  auto it = table.find(key);
  if (it == table.end()) throw PreconditionError("unknown curve label " + label);
  auto& a = it->second;
  return make_curve(label, a[0], a[1], a[2], a[3], a[4]);
}

std::vector<CurveSpec> parse_curve_records(std::istream& in) {
  std::vector<CurveSpec> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string label, tok[5];
    if (!(ls >> label)) continue;
    for (auto& t : tok)
      if (!(ls >> t)) throw PreconditionError("curve record needs label and five integers: " + line);
    out.push_back(make_curve(label, from_string(tok[0]), from_string(tok[1]), from_string(tok[2]),
                             from_string(tok[3]), from_string(tok[4])));
  }
  return out;
}

long ap(const CurveSpec& e, long l) {
  Int L = l;
  if (l == 2 || l == 3) {
    long count = 1;
    for (long x = 0; x < l; ++x)
      for (long y = 0; y < l; ++y) {
        Int f = y * y + e.a1 * x * y + e.a3 * y - (Int(x) * x * x + e.a2 * x * x + e.a4 * x + e.a6);
        if (divides(L, f)) ++count;
      }
    return l + 1 - count;
  }
  Invariants v = invariants(e);
  std::vector<signed char> chi(l, -1);
  chi[0] = 0;
  for (long y = 1; y < l; ++y) chi[(y * y) % l] = 1;
  long b2 = mod(v.b2, L).get_si(), b4 = mod(v.b4, L).get_si(), b6 = mod(v.b6, L).get_si();
  long s = 0;
  for (long x = 0; x < l; ++x) {
    long f = ((4 * x % l * x % l * x) % l + b2 * x % l * x % l + 2 * b4 * x % l + b6) % l;
    s += chi[f];
  }
  return -s;
}

std::vector<Int> an_list(const CurveSpec& e, size_t n) {
  std::vector<Int> a(n + 1, 0);
  if (n >= 1) a[1] = 1;
  std::vector<size_t> spf(n + 1, 0);
  for (size_t i = 2; i <= n; ++i)
    if (!spf[i])
      for (size_t k = i; k <= n; k += i)
        if (!spf[k]) spf[k] = i;
  Invariants v = invariants(e);
  std::vector<long> apl(n + 1, 0);
  for (size_t m = 2; m <= n; ++m) {
    size_t l = spf[m], q = 1, x = m;
    while (x % l == 0) x /= l, q *= l;
    if (x > 1) {
      a[m] = a[q] * a[x];
      continue;
    }
    if (q == l) {
      apl[l] = ap(e, static_cast<long>(l));
      a[m] = apl[l];
      continue;
    }
    bool bad = mod(v.disc, Int(static_cast<unsigned long>(l))) == 0;
    a[m] = apl[l] * a[m / l];
    if (!bad) a[m] -= Int(static_cast<unsigned long>(l)) * a[m / l / l];
  }
  return a;
}

// ---------------------------------------------------------------- rational points

bool on_curve(const CurveSpec& e, const RatPoint& p) {
  if (p.inf) return true;
  const Rat &x = p.x, &y = p.y;
  return y * y + Rat(e.a1) * x * y + Rat(e.a3) * y == x * x * x + Rat(e.a2) * x * x + Rat(e.a4) * x + Rat(e.a6);
}

RatPoint neg(const CurveSpec& e, const RatPoint& p) {
  if (p.inf) return p;
  RatPoint r = p;
  r.y = -p.y - Rat(e.a1) * p.x - Rat(e.a3);
  return r;
}

RatPoint add(const CurveSpec& e, const RatPoint& p, const RatPoint& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  Rat a1(e.a1), a2(e.a2), a3(e.a3), a4(e.a4), a6(e.a6);
  Rat lam, nu;
  if (p.x == q.x) {
    if (p.y + q.y + a1 * q.x + a3 == 0) return RatPoint{};
    lam = (3 * p.x * p.x + 2 * a2 * p.x + a4 - a1 * p.y) / (2 * p.y + a1 * p.x + a3);
    nu = (-p.x * p.x * p.x + a4 * p.x + 2 * a6 - a3 * p.y) / (2 * p.y + a1 * p.x + a3);
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  RatPoint r;
  r.inf = false;
  r.x = lam * lam + a1 * lam - a2 - p.x - q.x;
  r.y = -(lam + a1) * r.x - nu - a3;
  return r;
}

RatPoint mul(const CurveSpec& e, long k, const RatPoint& p) {
  RatPoint base = k < 0 ? neg(e, p) : p, r;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  while (n) {
    if (n & 1) r = add(e, r, base);
    n >>= 1;
    if (n) base = add(e, base, base);
  }
  return r;
}

namespace {

bool rat_sqrt(const Rat& x, Rat& out) {
  if (x < 0) return false;
  if (!is_square(x.get_num()) || !is_square(x.get_den())) return false;
  Int a, b;
  mpz_sqrt(a.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), x.get_den_mpz_t());
  out = Rat(a, b);
  return true;
}

}  // namespace

std::vector<RatPoint> search_rational_points(const CurveSpec& e, long nbound, long dbound) {
  std::vector<RatPoint> out;
  Invariants v = invariants(e);
  for (long d = 1; d <= dbound; ++d)
    for (long n = -nbound; n <= nbound; ++n) {
      if (gcd(Int(n), Int(d)) != 1) continue;
      Rat x(Int(n), Int(d) * d);
      Rat disc = 4 * x * x * x + Rat(v.b2) * x * x + 2 * Rat(v.b4) * x + Rat(v.b6);
      Rat s;
      if (!rat_sqrt(disc, s)) continue;
      RatPoint p;
      p.inf = false;
      p.x = x;
      p.y = (-(Rat(e.a1) * x + Rat(e.a3)) + s) / 2;
      out.push_back(p);
    }
  return out;
}

int torsion_order(const CurveSpec& e, const RatPoint& p) {
  RatPoint q = p;
  for (int k = 1; k <= 12; ++k) {
    if (q.inf) return k;
    q = add(e, q, p);
  }
  return 0;
}

std::vector<QuadPoint> search_quadratic_points(const CurveSpec& e, const Int& D, long hbound) {
  std::vector<QuadPoint> out;
  Invariants v = invariants(e);
  Rat Dq(D);
  auto qmul = [&](const QuadRat& a, const QuadRat& b) { return QuadRat{a.u * b.u + Dq * a.v * b.v, a.u * b.v + a.v * b.u}; };
  auto qadd = [](const QuadRat& a, const QuadRat& b) { return QuadRat{a.u + b.u, a.v + b.v}; };
  auto qsc = [](const QuadRat& a, const Rat& c) { return QuadRat{a.u * c, a.v * c}; };
  for (long w = 1; w <= 2; ++w)
    for (long u = -hbound; u <= hbound; ++u)
      for (long vv = 1; vv <= hbound; ++vv) {
        if (gcd(gcd(Int(u), Int(vv)), Int(w)) != 1) continue;
        QuadRat x{Rat(u, w), Rat(vv, w)};
        x.u.canonicalize();
        x.v.canonicalize();
        QuadRat x2 = qmul(x, x), x3 = qmul(x2, x);
        QuadRat f = qadd(qadd(qsc(x3, 4), qsc(x2, Rat(v.b2))), qadd(qsc(x, 2 * Rat(v.b4)), QuadRat{Rat(v.b6), 0}));
        // square root in Q(sqrt D)
        QuadRat s;
        bool ok = false;
        Rat nrm = f.u * f.u - Dq * f.v * f.v, n;
        if (rat_sqrt(nrm, n)) {
          for (int sg : {1, -1}) {
            Rat a2 = (f.u + sg * n) / 2, a;
            if (a2 != 0 && rat_sqrt(a2, a)) {
              s = QuadRat{a, f.v / (2 * a)};
              ok = true;
              break;
            }
          }
          if (!ok && f.v == 0) {
            Rat b;
            if (rat_sqrt(f.u / Dq, b)) s = QuadRat{0, b}, ok = true;
          }
        }
        if (!ok) continue;
        QuadPoint p;
        p.inf = false;
        p.x = x;
        QuadRat lin = qadd(qsc(x, Rat(e.a1)), QuadRat{Rat(e.a3), 0});
        p.y = qsc(qadd(qsc(lin, -1), s), Rat(1, 2));
        out.push_back(p);
      }
  return out;
}

// ---------------------------------------------------------------- local points

LocalCurve LocalCurve::from(const CurveSpec& e, const Int& p, long prec) {
  return {QuadExt::from_int(p, e.a1, prec), QuadExt::from_int(p, e.a2, prec), QuadExt::from_int(p, e.a3, prec),
          QuadExt::from_int(p, e.a4, prec), QuadExt::from_int(p, e.a6, prec)};
}

QuadExt residual(const LocalCurve& c, const LocalPoint& p) {
  if (p.inf) return QuadExt::zero(c.a1.prime(), kInfinity / 2);
  const QuadExt &x = p.x, &y = p.y;
  return y * y + c.a1 * x * y + c.a3 * y - (x * x * x + c.a2 * x * x + c.a4 * x + c.a6);
}

LocalPoint neg(const LocalCurve& c, const LocalPoint& p) {
  if (p.inf) return p;
  LocalPoint r = p;
  r.y = -p.y - c.a1 * p.x - c.a3;
  return r;
}

LocalPoint add(const LocalCurve& c, const LocalPoint& p, const LocalPoint& q) {
  if (p.inf) return q;
  if (q.inf) return p;
  QuadExt lam, nu;
  if ((p.x - q.x).is_zero()) {
    QuadExt den = p.y + q.y + c.a1 * q.x + c.a3;
    if (den.is_zero()) return LocalPoint{};
    long K = std::max(p.x.abs_precision(), p.y.abs_precision()) + 10;
    QuadExt two = QuadExt::from_int(c.a1.prime(), 2, K);
    QuadExt three = QuadExt::from_int(c.a1.prime(), 3, K);
    QuadExt d = two * p.y + c.a1 * p.x + c.a3;
    lam = (three * p.x * p.x + two * c.a2 * p.x + c.a4 - c.a1 * p.y) / d;
    nu = (-(p.x * p.x * p.x) + c.a4 * p.x + two * c.a6 - c.a3 * p.y) / d;
  } else {
    lam = (q.y - p.y) / (q.x - p.x);
    nu = (p.y * q.x - q.y * p.x) / (q.x - p.x);
  }
  LocalPoint r;
  r.inf = false;
  r.x = lam * lam + c.a1 * lam - c.a2 - p.x - q.x;
  r.y = -(lam + c.a1) * r.x - nu - c.a3;
  return r;
}

LocalPoint mul(const LocalCurve& c, long k, const LocalPoint& p) {
  LocalPoint base = k < 0 ? neg(c, p) : p, r;
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  while (n) {
    if (n & 1) r = add(c, r, base);
    n >>= 1;
    if (n) base = add(c, base, base);
  }
  return r;
}

LocalPoint to_local(const RatPoint& p, const Int& prime, long prec) {
  LocalPoint r;
  if (p.inf) return r;
  r.inf = false;
  auto v = [&](const Rat& z) { return z == 0 ? 0L : vp(z, prime); };
  r.x = QuadExt::from_rat(prime, p.x, prec + v(p.x));
  r.y = QuadExt::from_rat(prime, p.y, prec + v(p.y));
  return r;
}

LocalPoint to_local(const QuadPoint& p, const QuadExt& sqrtd, long prec) {
  LocalPoint r;
  if (p.inf) return r;
  const Int& prime = sqrtd.prime();
  auto conv = [&](const QuadRat& z) {
    long v = std::min(z.u == 0 ? 0L : vp(z.u, prime), z.v == 0 ? 0L : vp(z.v, prime));
    long A = prec + std::min(v, 0L);
    return QuadExt::from_rat(prime, z.u, A) + QuadExt::from_rat(prime, z.v, A) * sqrtd;
  };
  r.inf = false;
  r.x = conv(p.x);
  r.y = conv(p.y);
  return r;
}

}  // namespace darmon
