#include "darmon/classfield.hpp"

#include <algorithm>
#include <set>

namespace darmon {

namespace {

Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// x, y with a x + b y = g = gcd(a, b) >= 0
Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

const Mat2 kId{1, 0, 0, 1};

}  // namespace

QuadForm QuadForm::transform(const Mat2& g) const {
  return QuadForm{eval(g.a, g.c), 2 * a * g.a * g.b + b * (g.a * g.d + g.b * g.c) + 2 * c * g.c * g.d,
                  eval(g.b, g.d)};
}

bool QuadForm::operator<(const QuadForm& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return c < o.c;
}

std::string QuadForm::str() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }

bool is_reduced(const QuadForm& f) {
  Int D = f.disc();
  if (D < 0) {
    if (f.a <= 0) return false;
    if (abs(f.b) > f.a || f.a > f.c) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
  }
  Int r = isqrt(D);
  if (f.b <= 0 || f.b > r) return false;
  Int A = 2 * abs(f.a);
  Int lo = A + f.b;
  if (lo * lo <= D) return false;
  Int hi = A - f.b;
  return hi <= 0 || hi * hi < D;
}

QuadForm rho(const QuadForm& f, Mat2* g) {
  Int D = f.disc();
  if (D <= 0) throw PreconditionError("rho is defined for indefinite forms");
  Int r = isqrt(D);
  Int c2 = 2 * abs(f.c);
  Int lo = f.c * f.c > D ? Int(-abs(f.c) + 1) : Int(r - c2 + 1);
  Int bp = lo + mod(-f.b - lo, c2);
  Int delta = (bp + f.b) / (2 * f.c);
  Mat2 step{0, -1, 1, delta};
  if (g) *g = step;
  return f.transform(step);
}

QuadForm reduce_form(const QuadForm& f, Mat2* g) {
  Mat2 acc = kId;
  QuadForm h = f;
  if (f.disc() > 0) {
    for (int it = 0; !is_reduced(h); ++it) {
      if (it > 100000) throw Error("form reduction did not terminate");
      Mat2 s;
      h = rho(h, &s);
      acc = acc * s;
    }
  } else {
    if (f.a <= 0) throw PreconditionError("definite forms must be positive");
    while (true) {
      Int k = floor_div(h.a - h.b, 2 * h.a);
      Mat2 t{1, k, 0, 1};
      h = h.transform(t);
      acc = acc * t;
      if (h.a > h.c || (h.a == h.c && h.b < 0)) {
        Mat2 s{0, -1, 1, 0};
        h = h.transform(s);
        acc = acc * s;
        continue;
      }
      if (h.b == -h.a) continue;
      break;
    }
  }
  if (g) *g = acc;
  return h;
}

long class_index(const QuadraticOrderData& d, const QuadForm& f) {
  if (f.disc() != d.D) throw PreconditionError("form of the wrong discriminant");
  QuadForm r = reduce_form(f);
  for (size_t i = 0; i < d.cycles.size(); ++i)
    if (std::find(d.cycles[i].begin(), d.cycles[i].end(), r) != d.cycles[i].end()) return static_cast<long>(i);
  throw Error("reduced form " + r.str() + " not found among the classes");
}

QuadForm form_with_divisible_a(const QuadForm& f, const Int& m, Mat2* g) {
  if (m > 1)
    for (auto& [l, e] : factor(m))
      if (kronecker(f.disc(), l) == -1)
        throw PreconditionError("no form of discriminant " + f.disc().get_str() + " represents a multiple of " +
                                l.get_str());
  for (long B = 1; B < 10000; ++B)
    for (long x = -B; x <= B; ++x)
      for (long y = 0; y <= B; ++y) {
        if (std::max(std::labs(x), y) != B) continue;
        if (gcd(Int(x), Int(y)) != 1) continue;
        Int v = f.eval(x, y);
        if (v <= 0 || mod(v, m) != 0) continue;
        Int s, r;
        xgcd(Int(x), Int(y), s, r);
        Mat2 G{x, -r, y, s};
        if (g) *g = G;
        return f.transform(G);
      }
  throw Error("no equivalent form with the requested first coefficient found");
}

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
  if (f1.disc() != f2.disc()) throw PreconditionError("composition needs equal discriminants");
  QuadForm g1 = f1.a > 0 ? f1 : form_with_divisible_a(f1, 1);
  QuadForm g2 = f2.a > 0 ? f2 : form_with_divisible_a(f2, 1);
  if (g1.a > g2.a) std::swap(g1, g2);
  Int a1 = g1.a, b1 = g1.b, a2 = g2.a, b2 = g2.b, c2 = g2.c;
  Int s = (b1 + b2) / 2, n = b2 - s;
  Int y1, d;
  if (mod(a2, a1) == 0) {
    y1 = 0;
    d = a1;
  } else {
    Int v;
    d = xgcd(a2, a1, y1, v);
  }
  Int x2, y2, d1;
  if (mod(s, d) == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    d1 = xgcd(s, d, x2, y2);
    y2 = -y2;
  }
  Int v1 = a1 / d1, v2 = a2 / d1;
  Int r = mod(y1 * y2 * n - x2 * c2, v1);
  Int b3 = b2 + 2 * v2 * r, a3 = v1 * v2;
  Int c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
  QuadForm h{a3, b3, c3};
  if (h.disc() != f1.disc()) throw Error("internal: composition produced the wrong discriminant");
  return h;
}

std::vector<std::vector<long>> composition_table(const QuadraticOrderData& d) {
  size_t h = d.forms.size();
  std::vector<std::vector<long>> t(h, std::vector<long>(h));
  for (size_t i = 0; i < h; ++i)
    for (size_t j = 0; j < h; ++j) t[i][j] = class_index(d, compose(d.forms[i], d.forms[j]));
  return t;
}

Mat2 automorph(const QuadForm& f, const Int& t, const Int& u) {
  Int ta = t - f.b * u, td = t + f.b * u;
  if (mod(ta, 2) != 0 || mod(td, 2) != 0) throw Error("unit and form parities are incompatible");
  return Mat2{ta / 2, -f.c * u, f.a * u, td / 2};
}

QuadraticOrderData narrow_class_data(const Int& D) {
  if (!is_fundamental_discriminant(D)) throw PreconditionError("D = " + D.get_str() + " is not a fundamental discriminant");
  QuadraticOrderData d;
  d.D = D;
  std::vector<QuadForm> reduced;
  if (D > 0) {
    Int r = isqrt(D);
    for (Int b = 1; b <= r; ++b) {
      if (mod(b - D, 2) != 0) continue;
      Int ac = (b * b - D) / 4;
      for (Int a = 1; a <= abs(ac); ++a) {
        if (mod(ac, a) != 0) continue;
        for (int sg : {1, -1}) {
          QuadForm f{sg * a, b, ac / (sg * a)};
          if (is_reduced(f)) reduced.push_back(f);
        }
      }
    }
    std::sort(reduced.begin(), reduced.end());
    std::set<QuadForm> seen;
    for (const QuadForm& f : reduced) {
      if (seen.count(f)) continue;
      std::vector<QuadForm> cyc;
      QuadForm h = f;
      do {
        cyc.push_back(h);
        seen.insert(h);
        h = rho(h);
      } while (!(h == f));
      d.cycles.push_back(cyc);
    }
  } else {
    for (Int a = 1; 3 * a * a <= -D; ++a)
      for (Int b = -a + 1; b <= a; ++b) {
        if (mod(b * b - D, 4 * a) != 0) continue;
        QuadForm f{a, b, (b * b - D) / (4 * a)};
        if (is_reduced(f) && gcd(gcd(f.a, f.b), f.c) == 1) d.cycles.push_back({f});
      }
  }
  Int b0 = mod(D, 2);
  QuadForm principal{1, b0, (b0 - D) / 4};
  QuadForm pr = reduce_form(principal);
  for (size_t i = 0; i < d.cycles.size(); ++i)
    if (std::find(d.cycles[i].begin(), d.cycles[i].end(), pr) != d.cycles[i].end()) {
      std::swap(d.cycles[0], d.cycles[i]);
      break;
    }
  for (auto& cyc : d.cycles) {
    QuadForm best = cyc[0];
    bool have = false;
    for (const QuadForm& f : cyc)
      if (f.a > 0 && (!have || abs(f.a) < abs(best.a) || (abs(f.a) == abs(best.a) && f < best))) {
        best = f;
        have = true;
      }
    d.forms.push_back(best);
  }
  d.h_plus = static_cast<long>(d.forms.size());
  if (D < 0) {
    d.eps_t = d.tp_t = 2;
    d.eps_u = d.tp_u = 0;
    d.eps_norm = 1;
    return d;
  }
  const auto& cyc = d.cycles[0];
  Mat2 G = kId;
  QuadForm h = cyc[0];
  for (size_t i = 0; i < cyc.size(); ++i) {
    Mat2 s;
    h = rho(h, &s);
    G = G * s;
  }
  if (!(h.transform(kId) == cyc[0])) throw Error("internal: principal cycle did not close");
  Int t = G.a + G.d, u = G.c / cyc[0].a;
  if (t < 0) t = -t, u = -u;
  if (u < 0) u = -u;
  d.tp_t = t;
  d.tp_u = u;
  Int w = t + 2;
  if (mod(w, D) == 0 && is_square(w / D)) {
    Int eu = isqrt(w / D);
    d.eps_u = eu;
    d.eps_t = isqrt(D * eu * eu - 4);
    d.eps_norm = -1;
  } else {
    d.eps_t = t;
    d.eps_u = u;
    d.eps_norm = 1;
  }
  return d;
}

OptimalEmbedding embedding_for_form(const QuadraticOrderData& d, const QuadForm& f, const Int& p, long prec) {
  OptimalEmbedding e;
  e.form = f;
  e.class_index = class_index(d, f);
  QuadExt sq = sqrt_quadext(d.D, p, prec + 2);
  if (sq.in_base()) throw PreconditionError("p = " + p.get_str() + " splits in Q(sqrt D)");
  e.root_sign = 1;
  QuadExt num = QuadExt::from_int(p, -f.b, prec + 2) + (e.root_sign == 1 ? sq : -sq);
  e.tau = (num / QuadExt::from_int(p, 2 * f.a, prec + 2)).with_precision(prec);
  e.gamma = automorph(f, d.tp_t, d.tp_u);
  QuadExt lam = QuadExt::from_int(p, e.gamma.c, prec + 2) * e.tau + QuadExt::from_int(p, e.gamma.d, prec + 2);
  QuadExt lhs = QuadExt::from_int(p, e.gamma.a, prec + 2) * e.tau + QuadExt::from_int(p, e.gamma.b, prec + 2);
  QuadExt unit1 = (QuadExt::from_int(p, d.tp_t, prec + 2) + QuadExt::from_int(p, d.tp_u, prec + 2) * sq) /
                  QuadExt::from_int(p, 2, prec + 2);
  QuadExt unit2 = (QuadExt::from_int(p, d.tp_t, prec + 2) - QuadExt::from_int(p, d.tp_u, prec + 2) * sq) /
                  QuadExt::from_int(p, 2, prec + 2);
  bool unit_ok = lam.equals_mod(unit1, prec) || lam.equals_mod(unit2, prec);
  QuadExt quad = QuadExt::from_int(p, f.a, prec + 2) * e.tau * e.tau + QuadExt::from_int(p, f.b, prec + 2) * e.tau +
                 QuadExt::from_int(p, f.c, prec + 2);
  e.eigen_ok = unit_ok && lhs.equals_mod(lam * e.tau, prec) && quad.equals_mod(QuadExt::zero(p, prec), prec) &&
               e.gamma.det() == 1;
  return e;
}

std::vector<OptimalEmbedding> optimal_embeddings(const Int& D, long N, const Int& p, long prec) {
  if (D <= 0) throw PreconditionError("optimal embeddings need a real quadratic discriminant");
  if (kronecker(D, p) != -1) throw PreconditionError("p = " + p.get_str() + " is not inert in Q(sqrt " + D.get_str() + ")");
  if (N % p.get_si() != 0 || (N / p.get_si()) % p.get_si() == 0)
    throw PreconditionError("p must divide the level exactly once");
  if (gcd(D, Int(N)) != 1) throw PreconditionError("D and N must be coprime");
  long M = N / p.get_si();
  for (auto& [l, e] : factor(Int(M)))
    if (kronecker(D, l) != 1) throw PreconditionError("prime " + l.get_str() + " dividing M does not split in Q(sqrt D)");
  QuadraticOrderData d = narrow_class_data(D);
  std::vector<OptimalEmbedding> out;
  for (const QuadForm& f : d.forms) {
    QuadForm g = M == 1 ? f : form_with_divisible_a(f, Int(M));
    out.push_back(embedding_for_form(d, g, p, prec));
  }
  return out;
}

std::string CharacterData::str() const {
  if (d1 == 1 || d2 == 1) return "trivial";
  return "genus:" + d1.get_str() + "," + d2.get_str();
}

CharacterData trivial_character(const QuadraticOrderData& d) {
  CharacterData c;
  c.values.assign(d.forms.size(), 1);
  return c;
}

CharacterData genus_character(const QuadraticOrderData& d, const Int& d1, const Int& d2) {
  if (d1 * d2 != d.D) throw PreconditionError("genus character needs D1 * D2 = D");
  if (d1 == 1 || d2 == 1) return trivial_character(d);
  if (!is_fundamental_discriminant(d1) || !is_fundamental_discriminant(d2))
    throw PreconditionError("genus character needs fundamental discriminants D1, D2");
  CharacterData c;
  c.d1 = d1;
  c.d2 = d2;
  for (const QuadForm& f : d.forms) {
    int val = 0;
    for (long B = 1; B < 200 && val == 0; ++B)
      for (long x = -B; x <= B && val == 0; ++x)
        for (long y = 0; y <= B && val == 0; ++y) {
          if (std::max(std::labs(x), y) != B || gcd(Int(x), Int(y)) != 1) continue;
          Int m = f.eval(x, y);
          if (m == 0) continue;
          if (gcd(m, d1) == 1) val = kronecker(d1, m);
          else if (gcd(m, d2) == 1) val = kronecker(d2, m);
        }
    if (val == 0) throw Error("could not evaluate the genus character");
    c.values.push_back(val);
  }
  return c;
}

UnitCycle unit_cycle(const QuadraticOrderData& d) {
  if (d.D <= 0) throw PreconditionError("unit cycle needs a real quadratic field");
  UnitCycle u;
  u.t = d.tp_t;
  u.u = d.tp_u;
  Int b0 = mod(d.D, 2);
  u.principal_automorph = automorph(QuadForm{1, b0, (b0 - d.D) / 4}, u.t, u.u);
  return u;
}

}  // namespace darmon
