#pragma once

#include <functional>

#include "darmon/overconvergent.hpp"

namespace darmon {

enum class EvaluatorKind { Riemann, Moments };
std::string to_string(EvaluatorKind k);

// multiplicative integral of t - tau (t in Z_p) and 1 - tau/t (t outside Z_p) against mu_{r->s}
struct IntegralResult {
  QuadExt value;
  long ord = 0;
  QuadExt log;
  EvaluatorKind evaluator = EvaluatorKind::Riemann;
  long depth = 0;
  // the unit part of value (and log) is guaranteed modulo p^precision
  long precision = 0;
};

IntegralResult mult_integral_riemann(const BoundaryMeasure& mu, const QuadExt& tau, long depth);
IntegralResult mult_integral_moments(const OverconvergentSymbol& phi, const Cusp& r, const Cusp& s,
                                     const QuadExt& tau);

// additive values of the branch cocycles ord and log (Iwasawa)
struct BranchValue {
  Rat ord = 0;
  QuadExt log;
  BranchValue operator+(const BranchValue& o) const;
  BranchValue operator-(const BranchValue& o) const;
  BranchValue scaled(const Rat& c) const;
};

enum class Branch { Ord, Log };

using SectionLift = std::function<BranchValue(const QuadExt&)>;

// w -> (ord, log) of the multiplicative integral of the section against mu_{inf->0}
class SectionLiftEvaluator {
 public:
  explicit SectionLiftEvaluator(std::shared_ptr<const OverconvergentSymbol> phi);
  BranchValue operator()(const QuadExt& w) const;
  const OverconvergentSymbol& symbol() const { return *phi_; }

 private:
  std::shared_ptr<const OverconvergentSymbol> phi_;
};

// S/T factorisation of g in SL_2(Z): g = +-prod letters, ('T', n) = T^n, ('S', 1) = S
std::vector<std::pair<char, Int>> sl2_word(const Mat2& g);

// the unique cocycle on SL_2(Z) (or on diag(p,1)^{-1} SL_2(Z) diag(p,1)) with c(S) - F and c(T) constant
class VertexCocycle {
 public:
  VertexCocycle(SectionLift F, const Int& p, bool conjugated, const QuadExt& base);
  bool contains(const Mat2& g) const;
  BranchValue operator()(const Mat2& g, const QuadExt& tau) const;
  const BranchValue& kappa_s() const { return kappa_s_; }
  const BranchValue& c_t() const { return c_t_; }
  // kappa_S recomputed at another point; equal to kappa_s() within precision
  BranchValue kappa_at(const QuadExt& w) const;

 private:
  SectionLift F_;
  Int p_;
  bool conj_;
  BranchValue kappa_s_, c_t_;
  Mat2 to_sl2(const Mat2& g) const;
};

QuadExt mobius(const Mat2& g, const QuadExt& w);
QuadExt standard_point(const Int& p, long prec);

struct LInvariantResult {
  Padic value;
  std::vector<Mat2> gammas;
  std::vector<BranchValue> d;
  bool consistent = true;
  long precision = 0;
};

// homomorphism d = c - c' on Gamma_0(p) from the two vertex cocycles
class PeriodHomomorphism {
 public:
  PeriodHomomorphism(std::shared_ptr<const OverconvergentSymbol> phi, long prec);
  BranchValue operator()(const Mat2& g) const;
  BranchValue at(const Mat2& g, const QuadExt& w) const;
  const VertexCocycle& standard() const { return *c_; }
  const VertexCocycle& conjugate() const { return *c2_; }
  long precision() const { return prec_; }

 private:
  std::shared_ptr<const OverconvergentSymbol> phi_;
  long prec_;
  std::shared_ptr<VertexCocycle> c_, c2_;
  QuadExt base_;
};

BranchValue cocycle_pairing(const PeriodHomomorphism& d, Branch l, const Mat2& g);
LInvariantResult automorphic_L_invariant(const PeriodHomomorphism& d, const std::vector<Mat2>& gammas);
std::vector<Mat2> hyperbolic_gamma0_elements(long N, size_t count);

}  // namespace darmon
