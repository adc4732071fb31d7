#include "darmon/arith.hpp"

#include <map>
#include <mutex>

namespace darmon {

Int ipow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("inverse does not exist: " + a.get_str() + " mod " + m.get_str());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

long vp(const Int& x, const Int& p) {
  if (x == 0) return kInfinity;
  Int t = x;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long vp(const Rat& x, const Int& p) {
  if (x == 0) return kInfinity;
  return vp(x.get_num(), p) - vp(x.get_den(), p);
}

int kronecker(const Int& a, const Int& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

bool is_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

std::vector<std::pair<Int, int>> factor(const Int& n) {
  std::vector<std::pair<Int, int>> out;
  Int m = abs(n);
  if (m == 0) return out;
  for (Int d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) out.push_back({d, e});
  }
  if (m > 1) out.push_back({m, 1});
  return out;
}

bool is_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

bool is_fundamental_discriminant(const Int& d) {
  if (d == 0 || d == 1) return false;
  Int r = mod(d, 4);
  auto squarefree = [](const Int& x) {
    for (auto& [q, e] : factor(x))
      if (e > 1) return false;
    return true;
  };
  if (r == 1) return squarefree(d);
  if (r != 0) return false;
  Int m = d / 4;
  Int r4 = mod(m, 4);
  return (r4 == 2 || r4 == 3) && squarefree(m);
}

std::string to_string(const Int& x) { return x.get_str(); }

Int from_string(const std::string& s) {
  Int r;
  if (r.set_str(s, 10) != 0) throw PreconditionError("not a decimal integer: " + s);
  return r;
}

bool rational_reconstruct(const Int& x, const Int& m, const Int& bound, Rat& out) {
  Int r0 = m, r1 = mod(x, m), t0 = 0, t1 = 1;
  while (r1 > bound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound || gcd(t1, m) != 1) return false;
  out = Rat(r1, t1);
  out.canonicalize();
  return true;
}

std::shared_ptr<const PrimeField> PrimeField::get(const Int& p) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const PrimeField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = p.get_str();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  if (!is_prime(p)) throw PreconditionError("not a prime: " + key);
  auto f = std::make_shared<PrimeField>();
  f->p = p;
  f->nu = 0;
  if (p != 2)
    for (Int c = 2; c < p; ++c)
      if (kronecker(c, p) == -1) {
        f->nu = c;
        break;
      }
  cache[key] = f;
  return f;
}

// ---------------------------------------------------------------- Padic

Padic Padic::zero(const Int& p, long absprec) {
  Padic r;
  r.f_ = PrimeField::get(p);
  r.val_ = absprec;
  r.rel_ = 0;
  r.unit_ = 0;
  return r;
}

Padic Padic::make(const Int& p, long val, const Int& unit, long relprec) {
  Padic r;
  r.f_ = PrimeField::get(p);
  r.val_ = val;
  r.rel_ = relprec;
  r.unit_ = unit;
  r.normalize();
  return r;
}

Padic Padic::from_int(const Int& p, const Int& x, long absprec) { return make(p, 0, x, absprec); }

Padic Padic::from_rat(const Int& p, const Rat& x, long absprec) {
  if (x == 0) return zero(p, absprec);
  long v = vp(x, p);
  Int num = x.get_num(), den = x.get_den();
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  long rel = absprec - v;
  if (rel <= 0) return zero(p, absprec);
  Int m = ipow(p, rel);
  return make(p, v, mod(num * inv_mod(den, m), m), rel);
}

void Padic::normalize() {
  if (rel_ <= 0) {
    val_ += rel_;
    rel_ = 0;
    unit_ = 0;
    return;
  }
  const Int& p = f_->p;
  unit_ = mod(unit_, ipow(p, rel_));
  if (unit_ == 0) {
    val_ += rel_;
    rel_ = 0;
    return;
  }
  long k = vp(unit_, p);
  if (k > 0) {
    unit_ /= ipow(p, k);
    val_ += k;
    rel_ -= k;
  }
}

Int Padic::lift() const {
  if (is_zero()) return 0;
  if (val_ < 0) throw PreconditionError("lift of a non-integral p-adic number");
  return unit_ * ipow(prime(), val_);
}

Rat Padic::to_rat() const {
  if (is_zero()) return 0;
  Rat r(unit_);
  if (val_ >= 0)
    r *= Rat(ipow(prime(), val_));
  else
    r /= Rat(ipow(prime(), -val_));
  r.canonicalize();
  return r;
}

Padic Padic::operator-() const {
  Padic r = *this;
  r.unit_ = -r.unit_;
  r.normalize();
  return r;
}

Padic Padic::operator+(const Padic& o) const {
  long A = std::min(abs_precision(), o.abs_precision());
  if (is_zero()) return o.with_precision(A);
  if (o.is_zero()) return with_precision(A);
  long v = std::min(val_, o.val_);
  Padic r;
  r.f_ = f_;
  r.val_ = v;
  r.rel_ = A - v;
  r.unit_ = unit_ * ipow(prime(), val_ - v) + o.unit_ * ipow(prime(), o.val_ - v);
  r.normalize();
  return r;
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if (is_zero() || o.is_zero()) {
    long A = kInfinity;
    if (is_zero()) A = std::min(A, val_ + (o.is_zero() ? o.val_ : o.val_));
    if (o.is_zero()) A = std::min(A, o.val_ + val_);
    return zero(prime(), A);
  }
  Padic r;
  r.f_ = f_;
  r.val_ = val_ + o.val_;
  r.rel_ = std::min(rel_, o.rel_);
  r.unit_ = unit_ * o.unit_;
  r.normalize();
  return r;
}

Padic Padic::operator/(const Padic& o) const {
  if (o.is_zero()) throw PrecisionError("division by a p-adic zero");
  if (is_zero()) return zero(prime(), val_ - o.val_);
  Padic r;
  r.f_ = f_;
  r.val_ = val_ - o.val_;
  r.rel_ = std::min(rel_, o.rel_);
  r.unit_ = unit_ * inv_mod(o.unit_, ipow(prime(), r.rel_));
  r.normalize();
  return r;
}

Padic Padic::pow(long e) const {
  if (e < 0) return Padic::make(prime(), 0, 1, rel_) / pow(-e);
  if (is_zero()) return e == 0 ? Padic::make(prime(), 0, 1, kInfinity / 2) : zero(prime(), val_ * e);
  Padic r;
  r.f_ = f_;
  r.val_ = val_ * e;
  r.rel_ = rel_;
  Int m = ipow(prime(), rel_);
  mpz_powm_ui(r.unit_.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  r.normalize();
  return r;
}

Padic Padic::with_precision(long absprec) const {
  if (absprec >= abs_precision()) return *this;
  Padic r = *this;
  if (is_zero()) {
    r.val_ = absprec;
    return r;
  }
  r.rel_ = absprec - val_;
  r.normalize();
  if (r.is_zero()) r.val_ = absprec;
  return r;
}

bool Padic::equals_mod(const Padic& o, long k) const {
  Padic d = *this - o;
  return d.valuation() >= k;
}

// ---------------------------------------------------------------- QuadExt

QuadExt QuadExt::zero(const Int& p, long absprec) {
  QuadExt r;
  r.f_ = PrimeField::get(p);
  r.val_ = absprec;
  r.rel_ = 0;
  r.a_ = r.b_ = 0;
  return r;
}

QuadExt QuadExt::make(const FieldPtr& f, long val, const Int& a, const Int& b, long relprec) {
  QuadExt r;
  r.f_ = f;
  r.val_ = val;
  r.rel_ = relprec;
  r.a_ = a;
  r.b_ = b;
  r.normalize();
  return r;
}

QuadExt QuadExt::from_padic(const Padic& x) {
  QuadExt r;
  r.f_ = x.f_;
  r.val_ = x.val_;
  r.rel_ = x.rel_;
  r.a_ = x.unit_;
  r.b_ = 0;
  return r;
}

QuadExt QuadExt::from_int(const Int& p, const Int& x, long absprec) {
  return from_padic(Padic::from_int(p, x, absprec));
}

QuadExt QuadExt::from_rat(const Int& p, const Rat& x, long absprec) {
  return from_padic(Padic::from_rat(p, x, absprec));
}

QuadExt QuadExt::from_coords(const Int& p, const Rat& a, const Rat& b, long absprec) {
  auto f = PrimeField::get(p);
  if (a == 0 && b == 0) return zero(p, absprec);
  long v = std::min(vp(a, p), vp(b, p));
  long rel = absprec - v;
  if (rel <= 0) return zero(p, absprec);
  Int m = ipow(p, rel);
  auto coord = [&](const Rat& x) -> Int {
    if (x == 0) return 0;
    Rat y = x;
    if (v >= 0)
      y /= Rat(ipow(p, v));
    else
      y *= Rat(ipow(p, -v));
    y.canonicalize();
    return mod(y.get_num() * inv_mod(y.get_den(), m), m);
  };
  return make(f, v, coord(a), coord(b), rel);
}

void QuadExt::normalize() {
  if (rel_ <= 0) {
    val_ += rel_;
    rel_ = 0;
    a_ = b_ = 0;
    return;
  }
  const Int& p = f_->p;
  Int m = ipow(p, rel_);
  a_ = mod(a_, m);
  b_ = mod(b_, m);
  if (a_ == 0 && b_ == 0) {
    val_ += rel_;
    rel_ = 0;
    return;
  }
  long k = std::min(vp(a_, p), vp(b_, p));
  if (k > 0) {
    Int pk = ipow(p, k);
    a_ /= pk;
    b_ /= pk;
    val_ += k;
    rel_ -= k;
  }
}

Padic QuadExt::coord_a() const {
  if (is_zero()) return Padic::zero(prime(), val_);
  return Padic::make(prime(), val_, a_, rel_);
}

Padic QuadExt::coord_b() const {
  if (is_zero()) return Padic::zero(prime(), val_);
  return Padic::make(prime(), val_, b_, rel_);
}

bool QuadExt::in_base() const { return b_ == 0; }

QuadExt QuadExt::operator-() const {
  QuadExt r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  r.normalize();
  return r;
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  long A = std::min(abs_precision(), o.abs_precision());
  if (is_zero()) return o.with_precision(A);
  if (o.is_zero()) return with_precision(A);
  long v = std::min(val_, o.val_);
  Int s1 = ipow(prime(), val_ - v), s2 = ipow(prime(), o.val_ - v);
  return make(f_, v, a_ * s1 + o.a_ * s2, b_ * s1 + o.b_ * s2, A - v);
}

QuadExt QuadExt::operator-(const QuadExt& o) const { return *this + (-o); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
  if (is_zero() || o.is_zero()) {
    long A = kInfinity;
    if (is_zero()) A = std::min(A, val_ + o.val_);
    if (o.is_zero()) A = std::min(A, o.val_ + val_);
    return zero(prime(), A);
  }
  const Int& nu = f_->nu;
  return make(f_, val_ + o.val_, a_ * o.a_ + nu * b_ * o.b_, a_ * o.b_ + b_ * o.a_, std::min(rel_, o.rel_));
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
  if (o.is_zero()) throw PrecisionError("division by a p-adic zero");
  if (is_zero()) return zero(prime(), val_ - o.val_);
  long rel = std::min(rel_, o.rel_);
  Int m = ipow(prime(), rel);
  Int n = mod(o.a_ * o.a_ - f_->nu * o.b_ * o.b_, m);
  Int ni = inv_mod(n, m);
  Int ia = o.a_ * ni, ib = -o.b_ * ni;
  const Int& nu = f_->nu;
  return make(f_, val_ - o.val_, a_ * ia + nu * b_ * ib, a_ * ib + b_ * ia, rel);
}

QuadExt QuadExt::pow(long e) const {
  QuadExt one = make(f_, 0, 1, 0, is_zero() ? kInfinity / 2 : rel_);
  if (e < 0) return one / pow(-e);
  QuadExt r = one, b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

QuadExt QuadExt::frobenius() const {
  QuadExt r = *this;
  r.b_ = -r.b_;
  r.normalize();
  return r;
}

Padic QuadExt::norm() const {
  if (is_zero()) return Padic::zero(prime(), 2 * val_);
  return Padic::make(prime(), 2 * val_, a_ * a_ - f_->nu * b_ * b_, rel_);
}

Padic QuadExt::trace() const {
  if (is_zero()) return Padic::zero(prime(), val_);
  return Padic::make(prime(), val_, 2 * a_, rel_);
}

QuadExt QuadExt::with_precision(long absprec) const {
  if (absprec >= abs_precision()) return *this;
  QuadExt r = *this;
  if (is_zero()) {
    r.val_ = absprec;
    return r;
  }
  r.rel_ = absprec - val_;
  r.normalize();
  if (r.is_zero()) r.val_ = absprec;
  return r;
}

bool QuadExt::equals_mod(const QuadExt& o, long k) const {
  QuadExt d = *this - o;
  return d.valuation() >= k;
}

// ---------------------------------------------------------------- series

namespace {

long floor_log(const Int& p, long n) {
  long k = 0;
  for (Int t = p; t <= n; t *= p) ++k;
  return k;
}

// log(1 + p^m u) mod p^A for a unit-or-integral u in Z_q
Zq log_series(const ZqRing& R, const Zq& u, long m, long A) {
  const Int& p = R.field()->p;
  Zq sum{0, 0};
  Zq un = R.one();
  for (long n = 1; n * m - floor_log(p, n) < A; ++n) {
    un = R.mul(un, u);
    long vn = vp(Int(n), p);
    long val = n * m - vn;
    if (val >= A) continue;
    Zq term = R.scale(un, inv_mod(Int(n) / ipow(p, vn), R.modulus()) * ipow(p, val));
    sum = (n % 2 == 1) ? R.add(sum, term) : R.sub(sum, term);
  }
  return sum;
}

// exp(p^m u) mod p^A, p odd, m >= 1
Zq exp_series(const ZqRing& R, const Zq& u, long m, long A) {
  const Int& p = R.field()->p;
  double slope = 1.0 / (mpz_get_d(p.get_mpz_t()) - 1.0);
  Zq sum = R.one();
  Zq un = R.one();
  long val = 0;
  for (long n = 1; n * m - (n - 1) * slope < A; ++n) {
    long vn = vp(Int(n), p);
    val += m - vn;
    un = R.mul(un, u);
    un = R.scale(un, inv_mod(Int(n) / ipow(p, vn), R.modulus()));
    if (val < A) sum = R.add(sum, R.scale(un, ipow(p, val)));
  }
  return sum;
}

QuadExt from_zq(const FieldPtr& f, const Zq& x, long A) { return QuadExt::make(f, 0, x.a, x.b, A); }

}  // namespace

QuadExt padic_log(const QuadExt& x) {
  if (x.is_zero() || x.valuation() != 0) throw PreconditionError("padic_log needs a unit");
  const Int& p = x.prime();
  long A = x.abs_precision();
  ZqRing R(x.field(), A);
  Zq y = R.sub(Zq{x.unit_a(), x.unit_b()}, R.one());
  if (y.a == 0 && y.b == 0) return QuadExt::zero(p, A);
  long m = std::min(vp(y.a, p), vp(y.b, p));
  if (m < 1) throw PreconditionError("padic_log needs x = 1 mod p");
  Int pm = ipow(p, m);
  Zq u{y.a / pm, y.b / pm};
  return from_zq(x.field(), log_series(R, u, m, A), A);
}

Padic padic_log(const Padic& x) {
  QuadExt r = padic_log(QuadExt::from_padic(x));
  return r.coord_a();
}

QuadExt padic_log_iwasawa(const QuadExt& x) {
  if (x.is_zero()) throw PreconditionError("padic_log_iwasawa of zero");
  const Int& p = x.prime();
  QuadExt u = QuadExt::make(x.field(), 0, x.unit_a(), x.unit_b(), x.rel_precision());
  Int q1 = p * p - 1;
  QuadExt l = padic_log(u.pow(q1.get_si()));
  return l / QuadExt::from_int(p, q1, l.abs_precision() + 1);
}

Padic padic_log_iwasawa(const Padic& x) {
  if (x.is_zero()) throw PreconditionError("padic_log_iwasawa of zero");
  const Int& p = x.prime();
  Padic u = Padic::make(p, 0, x.unit(), x.rel_precision());
  Int q1 = p - 1;
  Padic l = padic_log(u.pow(q1.get_si()));
  return l / Padic::from_int(p, q1, l.abs_precision() + 1);
}

QuadExt padic_exp(const QuadExt& x) {
  const Int& p = x.prime();
  long A = x.abs_precision();
  if (p == 2) throw PreconditionError("padic_exp needs p odd");
  if (x.is_zero()) return QuadExt::make(x.field(), 0, 1, 0, A);
  long m = x.valuation();
  if (m < 1) throw PreconditionError("padic_exp needs valuation >= 1");
  ZqRing R(x.field(), A);
  return from_zq(x.field(), exp_series(R, Zq{x.unit_a(), x.unit_b()}, m, A), A);
}

Padic padic_exp(const Padic& x) { return padic_exp(QuadExt::from_padic(x)).coord_a(); }

Padic teichmuller(const Int& p, const Int& a, long prec) {
  if (mod(a, p) == 0) throw PreconditionError("teichmuller of zero residue");
  Int m = ipow(p, prec), x = mod(a, p);
  for (long i = 0; i < prec; ++i) mpz_powm(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t(), m.get_mpz_t());
  return Padic::make(p, 0, x, prec);
}

QuadExt teichmuller(const Int& p, const Int& a, const Int& b, long prec) {
  if (mod(a, p) == 0 && mod(b, p) == 0) throw PreconditionError("teichmuller of zero residue");
  ZqRing R(PrimeField::get(p), prec);
  Zq x{mod(a, p), mod(b, p)};
  Int q = p * p;
  for (long i = 0; i < prec; ++i) x = R.pow(x, q);
  return QuadExt::make(R.field(), 0, x.a, x.b, prec);
}

namespace {

Int sqrt_mod_prime_power(const Int& d, const Int& p, long prec) {
  Int r0 = -1;
  Int dm = mod(d, p);
  for (Int c = 1; c < p; ++c)
    if (mod(c * c, p) == dm) {
      r0 = c;
      break;
    }
  if (r0 < 0) throw PreconditionError("not a square mod p");
  if (r0 > (p - 1) / 2) r0 = p - r0;
  Int r = r0;
  for (long k = 1; k < prec; k *= 2) {
    Int m = ipow(p, std::min(2 * k, prec));
    r = mod(r - (r * r - d) * inv_mod(2 * r, m), m);
  }
  Int m = ipow(p, prec);
  r = mod(r, m);
  if (mod(r, p) > (p - 1) / 2) r = m - r;
  return r;
}

}  // namespace

QuadExt sqrt_quadext(const Int& d, const Int& p, long prec) {
  if (p == 2) throw PreconditionError("sqrt_quadext needs p odd");
  if (mod(d, p) == 0) throw PreconditionError("sqrt_quadext needs p not dividing d");
  auto f = PrimeField::get(p);
  if (kronecker(d, p) == 1) return QuadExt::make(f, 0, sqrt_mod_prime_power(d, p, prec), 0, prec);
  Int m = ipow(p, prec);
  Int c = sqrt_mod_prime_power(mod(d * inv_mod(f->nu, m), m), p, prec);
  return QuadExt::make(f, 0, 0, c, prec);
}

// ---------------------------------------------------------------- ZqRing

ZqRing::ZqRing(const FieldPtr& f, long prec) : f_(f), prec_(prec), mod_(ipow(f->p, prec)) {}

Zq ZqRing::reduce(const Zq& x) const { return Zq{mod(x.a, mod_), mod(x.b, mod_)}; }

Zq ZqRing::from_int(const Int& x) const { return Zq{mod(x, mod_), 0}; }

Zq ZqRing::add(const Zq& x, const Zq& y) const { return reduce(Zq{x.a + y.a, x.b + y.b}); }

Zq ZqRing::sub(const Zq& x, const Zq& y) const { return reduce(Zq{x.a - y.a, x.b - y.b}); }

Zq ZqRing::mul(const Zq& x, const Zq& y) const {
  return reduce(Zq{x.a * y.a + f_->nu * x.b * y.b, x.a * y.b + x.b * y.a});
}

Zq ZqRing::scale(const Zq& x, const Int& c) const { return reduce(Zq{x.a * c, x.b * c}); }

Zq ZqRing::inv(const Zq& x) const {
  Int n = mod(x.a * x.a - f_->nu * x.b * x.b, mod_);
  Int ni = inv_mod(n, mod_);
  return reduce(Zq{x.a * ni, -x.b * ni});
}

Zq ZqRing::pow(const Zq& x, Int e) const {
  Zq base = x;
  if (e < 0) {
    base = inv(x);
    e = -e;
  }
  Zq r = one();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return r;
}

bool ZqRing::is_unit(const Zq& x) const { return mod(x.a, f_->p) != 0 || mod(x.b, f_->p) != 0; }

}  // namespace darmon
