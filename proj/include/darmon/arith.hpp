#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace darmon {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct PrecisionError : Error {
  using Error::Error;
};

Int ipow(const Int& b, unsigned long e);
Int mod(const Int& a, const Int& m);
Int inv_mod(const Int& a, const Int& m);
Int gcd(const Int& a, const Int& b);
long vp(const Int& x, const Int& p);
long vp(const Rat& x, const Int& p);
int kronecker(const Int& a, const Int& n);
bool is_prime(const Int& n);
std::vector<std::pair<Int, int>> factor(const Int& n);
bool is_square(const Int& n);
bool is_fundamental_discriminant(const Int& d);
std::string to_string(const Int& x);
Int from_string(const std::string& s);
// rational reconstruction of x mod m with |num|, den <= bound
bool rational_reconstruct(const Int& x, const Int& m, const Int& bound, Rat& out);

constexpr long kInfinity = 1L << 40;

// Shared per-prime data: p and the non-residue nu defining Q_{p^2} = Q_p(w), w^2 = nu.
struct PrimeField {
  Int p;
  Int nu;
  static std::shared_ptr<const PrimeField> get(const Int& p);
};
using FieldPtr = std::shared_ptr<const PrimeField>;

class Padic {
 public:
  Padic() = default;
  static Padic zero(const Int& p, long absprec);
  static Padic from_int(const Int& p, const Int& x, long absprec);
  static Padic from_rat(const Int& p, const Rat& x, long absprec);
  static Padic make(const Int& p, long val, const Int& unit, long relprec);

  const Int& prime() const { return f_->p; }
  const FieldPtr& field() const { return f_; }
  bool is_zero() const { return rel_ == 0; }
  long valuation() const { return val_; }
  long rel_precision() const { return rel_; }
  long abs_precision() const { return val_ + rel_; }
  const Int& unit() const { return unit_; }
  // integer representative mod p^abs_precision; requires valuation >= 0
  Int lift() const;
  Rat to_rat() const;

  Padic operator-() const;
  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const;
  Padic pow(long e) const;
  Padic with_precision(long absprec) const;
  bool equals_mod(const Padic& o, long k) const;

 private:
  FieldPtr f_;
  long val_ = kInfinity;
  long rel_ = 0;
  Int unit_;
  void normalize();
  friend class QuadExt;
};

class QuadExt {
 public:
  QuadExt() = default;
  static QuadExt zero(const Int& p, long absprec);
  static QuadExt from_padic(const Padic& x);
  static QuadExt from_int(const Int& p, const Int& x, long absprec);
  static QuadExt from_rat(const Int& p, const Rat& x, long absprec);
  // a + b w with integer (or rational) coordinates, known mod p^absprec
  static QuadExt from_coords(const Int& p, const Rat& a, const Rat& b, long absprec);
  static QuadExt make(const FieldPtr& f, long val, const Int& a, const Int& b, long relprec);

  const Int& prime() const { return f_->p; }
  const FieldPtr& field() const { return f_; }
  bool is_zero() const { return rel_ == 0; }
  long valuation() const { return val_; }
  long rel_precision() const { return rel_; }
  long abs_precision() const { return val_ + rel_; }
  const Int& unit_a() const { return a_; }
  const Int& unit_b() const { return b_; }
  Padic coord_a() const;
  Padic coord_b() const;
  bool in_base() const;

  QuadExt operator-() const;
  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator/(const QuadExt& o) const;
  QuadExt pow(long e) const;
  QuadExt frobenius() const;
  Padic norm() const;
  Padic trace() const;
  QuadExt with_precision(long absprec) const;
  bool equals_mod(const QuadExt& o, long k) const;

 private:
  FieldPtr f_;
  long val_ = kInfinity;
  long rel_ = 0;
  Int a_, b_;
  void normalize();
};

Padic padic_log(const Padic& x);
QuadExt padic_log(const QuadExt& x);
Padic padic_log_iwasawa(const Padic& x);
QuadExt padic_log_iwasawa(const QuadExt& x);
Padic padic_exp(const Padic& x);
QuadExt padic_exp(const QuadExt& x);
Padic teichmuller(const Int& p, const Int& a, long prec);
QuadExt teichmuller(const Int& p, const Int& a, const Int& b, long prec);
QuadExt sqrt_quadext(const Int& d, const Int& p, long prec);

// Fixed-modulus arithmetic in Z_{p^2}/p^k, used by the inner loops.
struct Zq {
  Int a, b;
};

class ZqRing {
 public:
  ZqRing(const FieldPtr& f, long prec);
  const FieldPtr& field() const { return f_; }
  long prec() const { return prec_; }
  const Int& modulus() const { return mod_; }
  Zq reduce(const Zq& x) const;
  Zq from_int(const Int& x) const;
  Zq one() const { return from_int(1); }
  Zq add(const Zq& x, const Zq& y) const;
  Zq sub(const Zq& x, const Zq& y) const;
  Zq mul(const Zq& x, const Zq& y) const;
  Zq scale(const Zq& x, const Int& c) const;
  Zq inv(const Zq& x) const;
  Zq pow(const Zq& x, Int e) const;
  bool is_unit(const Zq& x) const;

 private:
  FieldPtr f_;
  long prec_;
  Int mod_;
};

}  // namespace darmon
