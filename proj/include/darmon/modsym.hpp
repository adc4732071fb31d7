#pragma once

#include <map>
#include <memory>

#include "darmon/curve.hpp"
#include "darmon/linalg.hpp"

namespace darmon {

// a point of P^1(Q); den = 0 is infinity
struct Cusp {
  Int num = 1, den = 0;
  static Cusp infinity() { return Cusp{}; }
  static Cusp of(const Rat& x);
  static Cusp of(const Int& n, const Int& d);
  bool is_infinity() const { return den == 0; }
  Rat value() const;
  bool operator==(const Cusp& o) const { return num == o.num && den == o.den; }
};

struct Mat2 {
  Int a, b, c, d;
  Int det() const { return a * d - b * c; }
  Mat2 operator*(const Mat2& o) const;
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Cusp act(const Cusp& x) const;
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

// {inf -> x} = sum of g{0 -> inf} over the returned g in SL_2(Z) (continued-fraction convergents)
std::vector<Mat2> unimodular_pieces(const Cusp& x);
Mat2 lift_to_sl2(const Int& c, const Int& d, long N);
bool cusps_equivalent(const Cusp& x, const Cusp& y, long N);

class P1List {
 public:
  explicit P1List(long N);
  long level() const { return n_; }
  size_t size() const { return reps_.size(); }
  const std::pair<long, long>& rep(size_t i) const { return reps_[i]; }
  // index of (c : d), or -1 if gcd(c, d, N) != 1
  long index(const Int& c, const Int& d) const;
  long index(long c, long d) const;
  // the star involution (c : d) -> (-c : d), and S, tau images
  size_t star(size_t i) const;
  size_t s_image(size_t i) const;
  size_t tau_image(size_t i) const;
  Mat2 lift(size_t i) const { return lifts_[i]; }

 private:
  long n_;
  std::vector<std::pair<long, long>> reps_;
  std::vector<long> table_;
  std::vector<Mat2> lifts_;
};

class ManinSymbolSpace {
 public:
  static ManinSymbolSpace build(long N, int sign = 0);

  long level() const { return p1_->level(); }
  int sign() const { return sign_; }
  const P1List& p1() const { return *p1_; }
  std::shared_ptr<const P1List> p1_ptr() const { return p1_; }
  size_t dimension() const { return basis_.size(); }
  const std::vector<QVec>& generator_coords() const { return coords_; }
  const std::vector<size_t>& basis() const { return basis_; }
  size_t cusp_count() const { return cusps_.size(); }
  size_t cuspidal_dimension() const;
  // dual Hecke action on coordinate functionals: (T c)_k = sum_j H[k][j] c_j
  QMat hecke(long l) const;
  QMat cuspidal_dual() const;
  // sum over generators of the path decomposition, as generator multiplicities
  std::vector<long> path_generators(const Cusp& r, const Cusp& s) const;
  Rat evaluate(const QVec& c, const Cusp& r, const Cusp& s) const;
  // exhaustive check of the two- and three-term relations (and sign) in the quotient
  bool check_relations() const;

 private:
  int sign_ = 0;
  std::shared_ptr<const P1List> p1_;
  std::vector<QVec> coords_;
  std::vector<size_t> basis_;
  std::vector<Cusp> cusps_;
  size_t cusp_index(const Cusp& x) const;
};

struct EigenSymbol {
  std::string curve_label;
  long level = 0;
  int sign = 1;
  std::shared_ptr<const P1List> p1;
  std::vector<Int> values;
  std::map<long, long> eigenvalues;
  Rat scalar;

  Int generator_value(const Int& c, const Int& d) const;
  Int from_infinity(const Cusp& x) const;
  Int evaluate(const Cusp& r, const Cusp& s) const;
};

EigenSymbol eigensymbol_for_curve(const CurveSpec& e, int sign, long bound = 50);
std::vector<long> primes_up_to(long n);

}  // namespace darmon
