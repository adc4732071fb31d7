#include "darmon/heegner.hpp"

#include <algorithm>
#include <cmath>

#include "darmon/modsym.hpp"

namespace darmon {

namespace {

using boost::multiprecision::sqrt;

Complex I() { return Complex(Real(0), Real(1)); }
Complex from_int(const Int& x) { return Complex(Real(x.get_str())); }
Complex from_rat(const Rat& x) { return Complex(Real(x.get_num().get_str()) / Real(x.get_den().get_str())); }

unsigned target_digits() { return static_cast<unsigned>(complex_precision_bits() * 0.30103) - 3; }

Real agm(Real a, Real b) {
  Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(target_digits() + 2));
  for (int it = 0; it < 200; ++it) {
    Real m = (a + b) / 2;
    b = sqrt(a * b);
    a = m;
    if (boost::multiprecision::abs(a - b) < eps * boost::multiprecision::abs(a)) break;
  }
  return a;
}

// roots of 4x^3 + b2 x^2 + 2 b4 x + b6
std::vector<Complex> cubic_roots(const Invariants& v) {
  Complex c2 = from_rat(Rat(v.b2, 4)), c1 = from_rat(Rat(v.b4, 2)), c0 = from_rat(Rat(v.b6, 4));
  auto f = [&](const Complex& x) { return ((x + c2) * x + c1) * x + c0; };
  std::vector<Complex> r = {Complex(Real("0.4"), Real("0.9")), Complex(Real("0.4"), Real("0.9")) * Complex(Real("0.4"), Real("0.9")),
                            Complex(Real("0.4"), Real("0.9")) * Complex(Real("0.4"), Real("0.9")) * Complex(Real("0.4"), Real("0.9"))};
  for (int it = 0; it < 500; ++it) {
    Real change = 0;
    for (size_t i = 0; i < 3; ++i) {
      Complex den(Real(1));
      for (size_t j = 0; j < 3; ++j)
        if (j != i) den = den * (r[i] - r[j]);
      Complex step = f(r[i]) / den;
      r[i] = r[i] - step;
      change = std::max(change, step.abs());
    }
    if (change < boost::multiprecision::pow(Real(10), -static_cast<int>(target_digits() + 5))) break;
  }
  return r;
}

Complex j_of_tau(const Complex& tau, size_t n) {
  Complex q = cexp(Complex(Real(2) * pi()) * I() * tau);
  Complex e4(Real(1)), prod(Real(1)), qn(Real(1));
  for (size_t m = 1; m <= n; ++m) {
    qn = qn * q;
    Real s3 = 0;
    for (size_t d = 1; d <= m; ++d)
      if (m % d == 0) s3 += Real(static_cast<double>(d * d * d));
    e4 = e4 + Complex(Real(240) * s3) * qn;
    prod = prod * (Complex(Real(1)) - qn);
  }
  Complex p24(Real(1));
  for (int k = 0; k < 24; ++k) p24 = p24 * prod;
  return e4 * e4 * e4 / (q * p24);
}

// integral of 2 pi i f(z) dz from z0 to g z0 with z0 = (-d + i)/c, g z0 = (a + i)/c
Complex loop_integral(const std::vector<Int>& an, Mat2 g, size_t terms) {
  if (g.c < 0) g = Mat2{-g.a, -g.b, -g.c, -g.d};
  Real c(g.c.get_str());
  Complex z0(Real(-Real(g.d.get_str())) / c, Real(1) / c), z1(Real(g.a.get_str()) / c, Real(1) / c);
  return qexp_integral(an, z1, terms) - qexp_integral(an, z0, terms);
}

Complex f_value(const std::vector<Int>& an, const Complex& z, size_t terms) {
  Complex q = cexp(Complex(Real(2) * pi()) * I() * z), qn(Real(1)), s;
  for (size_t n = 1; n <= terms && n < an.size(); ++n) {
    qn = qn * q;
    if (an[n] != 0) s = s + from_int(an[n]) * qn;
  }
  return s;
}

bool small_rational(const Real& x, Rat& out) {
  for (long den = 1; den <= 48; ++den) {
    Real y = x * den;
    Real r = boost::multiprecision::round(y);
    if (boost::multiprecision::abs(y - r) < Real("1e-20") && boost::multiprecision::abs(r) <= 1000) {
      out = Rat(Int(r.convert_to<long>()), Int(den));
      out.canonicalize();
      return true;
    }
  }
  return false;
}

}  // namespace

Complex qexp_integral(const std::vector<Int>& an, const Complex& z, size_t terms) {
  Complex q = cexp(Complex(Real(2) * pi()) * I() * z), qn(Real(1)), s;
  for (size_t n = 1; n <= terms && n < an.size(); ++n) {
    qn = qn * q;
    if (an[n] != 0) s = s + from_rat(Rat(an[n], Int(static_cast<unsigned long>(n)))) * qn;
  }
  return s;
}

Real tail_bound(const Real& y, size_t terms) {
  Real r = boost::multiprecision::exp(-Real(2) * pi() * y);
  Real B(static_cast<double>(terms + 1));
  return Real(2) * sqrt(B) * boost::multiprecision::pow(r, static_cast<int>(terms + 1)) / ((1 - r) * (1 - r));
}

size_t terms_for_height(const Real& y, unsigned digits) {
  Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(digits));
  size_t B = 16;
  while (tail_bound(y, B) > eps) B += B / 4 + 1;
  return B;
}

PeriodLattice complex_periods(const CurveSpec& e) {
  set_complex_precision_bits(complex_precision_bits());
  PeriodLattice L;
  long N = conductor(e).get_si();
  EigenSymbol sp = eigensymbol_for_curve(e, 1), sm = eigensymbol_for_curve(e, -1);
  unsigned digits = target_digits();
  size_t B = terms_for_height(Real(1) / Real(N), digits + 2);
  L.terms = static_cast<long>(B);
  auto an = an_list(e, B);

  std::vector<Mat2> loops;
  for (long d = 1; d < N && loops.size() < 40; ++d) {
    if (gcd(Int(d), Int(N)) != 1) continue;
    Int a = inv_mod(Int(d), Int(N));
    loops.push_back(Mat2{a, (a * d - 1) / N, Int(N), Int(d)});
  }
  auto phi = [&](const EigenSymbol& s, const Mat2& g) { return s.evaluate(Cusp::infinity(), Cusp::of(g.a, g.c)); };
  long i1 = -1, i2 = -1;
  for (size_t i = 0; i < loops.size() && i2 < 0; ++i)
    for (size_t j = i + 1; j < loops.size() && i2 < 0; ++j) {
      Int det = phi(sp, loops[i]) * phi(sm, loops[j]) - phi(sm, loops[i]) * phi(sp, loops[j]);
      if (det != 0) i1 = static_cast<long>(i), i2 = static_cast<long>(j);
    }
  if (i2 < 0) throw Error("no pair of loops separates the +- periods");
  const Mat2 &g1 = loops[static_cast<size_t>(i1)], &g2 = loops[static_cast<size_t>(i2)];
  auto solve = [&](const Complex& I1, const Complex& I2, Complex& op, Complex& om) {
    Complex p1 = from_int(phi(sp, g1)), m1 = from_int(phi(sm, g1)), p2 = from_int(phi(sp, g2)), m2 = from_int(phi(sm, g2));
    Complex det = p1 * m2 - m1 * p2;
    op = (I1 * m2 - m1 * I2) / det;
    om = (p1 * I2 - I1 * p2) / det;
  };
  solve(loop_integral(an, g1, B), loop_integral(an, g2, B), L.omega_plus, L.omega_minus);
  L.loops = {g1, g2};
  L.consistency_error = 0;
  for (const Mat2& g : loops) {
    Complex pred = from_int(phi(sp, g)) * L.omega_plus + from_int(phi(sm, g)) * L.omega_minus;
    L.consistency_error = std::max(L.consistency_error, (pred - loop_integral(an, g, B)).abs());
    if (L.loops.size() >= 4) break;
    if (!(g == g1) && !(g == g2)) L.loops.push_back(g);
  }
  L.ratio_real_part = boost::multiprecision::abs((L.omega_minus / L.omega_plus).re);
  {
    auto refl = [](const Mat2& g) { return Mat2{g.a, -g.b, -g.c, g.d}; };
    Complex op, om;
    solve(loop_integral(an, refl(g1), B), loop_integral(an, refl(g2), B), op, om);
    L.conjugation_error = (op - L.omega_plus).abs() + (om + L.omega_minus).abs();
  }

  Invariants v = invariants(e);
  auto r = cubic_roots(v);
  Real pi_ = pi();
  if (v.disc > 0) {
    L.positive_discriminant = true;
    std::vector<Real> re = {r[0].re, r[1].re, r[2].re};
    std::sort(re.begin(), re.end(), std::greater<Real>());
    L.w1 = Complex(pi_ / agm(sqrt(re[0] - re[2]), sqrt(re[0] - re[1])));
    L.w2 = Complex(Real(0), pi_ / agm(sqrt(re[0] - re[2]), sqrt(re[1] - re[2])));
    L.w_real = L.w1;
    L.w_imag = L.w2;
  } else {
    size_t k = 0;
    for (size_t i = 1; i < 3; ++i)
      if (boost::multiprecision::abs(r[i].im) < boost::multiprecision::abs(r[k].im)) k = i;
    Real e1 = r[k].re;
    Real a = 3 * e1 + Real(v.b2.get_str()) / 4;
    Real b = sqrt(3 * e1 * e1 + Real(v.b2.get_str()) / 2 * e1 + Real(v.b4.get_str()) / 2);
    L.w1 = Complex(2 * pi_ / agm(2 * sqrt(b), sqrt(2 * b + a)));
    L.w2 = Complex(-L.w1.re / 2, pi_ / agm(2 * sqrt(b), sqrt(2 * b - a)));
    L.w_real = L.w1;
    L.w_imag = L.w2 + L.w2 + L.w1;
  }
  Complex tau = L.w2 / L.w1;
  Complex jt = j_of_tau(tau, 80);
  Rat jr = v.j;
  Complex jE = from_rat(jr);
  L.j_error = (jt - jE).abs() / std::max(Real(1), jE.abs());
  Rat sp_, sm_;
  bool okp = small_rational((L.omega_plus / L.w_real).re, sp_);
  bool okm = small_rational((L.omega_minus / L.w_imag).re, sm_);
  L.scalars_found = okp && okm;
  if (L.scalars_found) {
    L.scalar_plus = sp_;
    L.scalar_minus = sm_;
  }
  return L;
}

Complex reduce_mod_lattice(const PeriodLattice& L, const Complex& z) {
  Real t = (z * L.w1.conj()).im / (L.w2 * L.w1.conj()).im;
  Complex rest = z - Complex(t) * L.w2;
  Real s = (rest / L.w1).re;
  Real tr = boost::multiprecision::round(t), sr = boost::multiprecision::round(s);
  return z - Complex(tr) * L.w2 - Complex(sr) * L.w1;
}

ComplexPoint weierstrass_map(const CurveSpec& e, const PeriodLattice& L, const Complex& z0) {
  ComplexPoint P;
  Complex z = reduce_mod_lattice(L, z0);
  Real eps = boost::multiprecision::pow(Real(10), -static_cast<int>(target_digits()));
  if (z.abs() < eps) {
    P.inf = true;
    return P;
  }
  Complex tpi = Complex(Real(2) * pi()) * I();
  Complex tau = L.w2 / L.w1;
  Complex q = cexp(tpi * tau), u = cexp(tpi * z / L.w1), ui = Complex(Real(1)) / u;
  Complex one(Real(1)), two(Real(2));
  auto cube = [](const Complex& x) { return x * x * x; };
  Complex wp = Complex(Real(1) / 12) + u / ((one - u) * (one - u));
  Complex dwp = u * (one + u) / cube(one - u);
  Complex qn = one;
  for (int n = 1; n < 4000; ++n) {
    qn = qn * q;
    Complex a = qn * u, b = qn * ui;
    Complex term = a / ((one - a) * (one - a)) + b / ((one - b) * (one - b)) - two * qn / ((one - qn) * (one - qn));
    Complex dterm = a * (one + a) / cube(one - a) - b * (one + b) / cube(one - b);
    wp = wp + term;
    dwp = dwp + dterm;
    if (term.abs() + dterm.abs() < eps * eps) break;
  }
  Complex k = tpi / L.w1;
  wp = k * k * wp;
  dwp = k * k * k * dwp;
  Invariants v = invariants(e);
  P.x = wp - from_rat(Rat(v.b2, 12));
  P.y = (dwp - from_int(e.a1) * P.x - from_int(e.a3)) / two;
  Complex lhs = P.y * P.y + from_int(e.a1) * P.x * P.y + from_int(e.a3) * P.y;
  Complex rhs = P.x * P.x * P.x + from_int(e.a2) * P.x * P.x + from_int(e.a4) * P.x + from_int(e.a6);
  P.residual = (lhs - rhs).abs() / std::max(Real(1), P.x.abs() * P.x.abs() * P.x.abs());
  return P;
}

std::vector<QuadForm> heegner_forms(const Int& D, long N, const Int& beta, size_t skip) {
  QuadraticOrderData d = narrow_class_data(D);
  std::vector<QuadForm> out(d.forms.size());
  std::vector<size_t> seen(d.forms.size(), 0);
  size_t filled = 0;
  for (long a1 = 1; a1 < 100000 && filled < d.forms.size(); ++a1) {
    Int a = Int(N) * a1;
    Int lo = -a + 1, start = lo + mod(beta - lo, Int(2 * N));
    for (Int b = start; b <= a && filled < d.forms.size(); b += 2 * N) {
      Int num = b * b - D;
      if (mod(num, 4 * a) != 0) continue;
      QuadForm f{a, b, num / (4 * a)};
      if (gcd(gcd(f.a, f.b), f.c) != 1) continue;
      size_t k = static_cast<size_t>(class_index(d, f));
      if (seen[k]++ == skip) {
        out[k] = f;
        ++filled;
      }
    }
  }
  if (filled < d.forms.size()) throw Error("could not find Heegner representatives for every class");
  return out;
}

HeegnerResult heegner_point(const CurveSpec& e, const Int& D) {
  if (D >= 0) throw PreconditionError("Heegner points need an imaginary quadratic discriminant");
  if (!is_fundamental_discriminant(D)) throw PreconditionError("D must be a fundamental discriminant");
  long N = conductor(e).get_si();
  for (auto& [l, ex] : factor(Int(N)))
    if (kronecker(D, l) != 1)
      throw PreconditionError("Heegner hypothesis fails: prime " + l.get_str() + " dividing N does not split in Q(sqrt " +
                              D.get_str() + ")");
  HeegnerResult res;
  res.D = D;
  res.lattice = complex_periods(e);
  Int beta = -1;
  for (long b = 0; b < 2 * N; ++b)
    if (mod(Int(b) * b - D, Int(4 * N)) == 0) {
      beta = b;
      break;
    }
  if (beta < 0) throw PreconditionError("D is not a square modulo 4N");
  res.beta = beta;
  unsigned digits = target_digits();
  Real sqd = sqrt(Real(Int(-D).get_str()));
  auto forms = heegner_forms(D, N, beta);
  res.class_number = static_cast<long>(forms.size());
  QuadraticOrderData qd = narrow_class_data(D);
  size_t maxB = 0;
  std::vector<Complex> zs;
  for (const QuadForm& f : forms) {
    Real two_a(Int(2 * f.a).get_str());
    zs.push_back(Complex(-Real(f.b.get_str()) / two_a, sqd / two_a));
    maxB = std::max(maxB, terms_for_height(sqd / two_a, digits + 2));
  }
  auto an = an_list(e, 2 * maxB + 2);
  res.doubling_error = 0;
  for (size_t i = 0; i < forms.size(); ++i) {
    HeegnerTerm t;
    t.form = forms[i];
    t.class_index = class_index(qd, forms[i]);
    t.z = zs[i];
    t.terms = terms_for_height(zs[i].im, digits + 2);
    t.J = qexp_integral(an, t.z, t.terms);
    t.tail = tail_bound(zs[i].im, t.terms);
    res.doubling_error += (qexp_integral(an, t.z, 2 * t.terms) - t.J).abs();
    res.trace = res.trace + t.J;
    res.terms.push_back(t);
  }
  res.point = weierstrass_map(e, res.lattice, res.trace);

  {
    Mat2 g = res.lattice.loops[0];
    Real c(g.c.get_str());
    Complex z(-Real(g.d.get_str()) / c + Real("0.013"), Real("1.1") / c);
    Complex gz = (from_int(g.a) * z + from_int(g.b)) / (from_int(g.c) * z + from_int(g.d));
    Complex cz = from_int(g.c) * z + from_int(g.d);
    size_t B = terms_for_height(std::min(z.im, gz.im), digits + 2);
    auto an2 = an_list(e, B);
    res.modularity_error = (f_value(an2, gz, B) / (cz * cz) - f_value(an2, z, B)).abs();
  }

  {
    auto alt = heegner_forms(D, N, beta, 1);
    Complex tr2;
    for (size_t i = alt.size(); i-- > 0;) {
      Real two_a(Int(2 * alt[i].a).get_str());
      Complex z(-Real(alt[i].b.get_str()) / two_a, sqd / two_a);
      size_t B = terms_for_height(z.im, digits + 2);
      tr2 = tr2 + qexp_integral(an_list(e, B), z, B);
    }
    res.permutation_error = reduce_mod_lattice(res.lattice, tr2 - res.trace).abs();
  }

  res.distance = Real(1);
  if (!res.point.inf) {
    for (const RatPoint& Q : search_rational_points(e, 400, 6)) {
      if (Q.inf || torsion_order(e, Q) != 0) continue;
      for (int sg : {1, -1}) {
        RatPoint R = sg == 1 ? Q : neg(e, Q);
        Real dist = (res.point.x - from_rat(R.x)).abs() + (res.point.y - from_rat(R.y)).abs();
        if (dist < res.distance) {
          res.distance = dist;
          res.global = R;
          res.global_sign = sg;
        }
      }
    }
    res.matched = res.distance < Real("1e-15");
  }
  return res;
}

}  // namespace darmon
