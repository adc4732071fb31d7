#pragma once

#include "darmon/classfield.hpp"
#include "darmon/integration.hpp"
#include "darmon/tate.hpp"

namespace darmon {

// formal-group logarithm in t = -x/y for the invariant differential dx/(2y + a1 x + a3): log(t) = sum out[n] t^n
std::vector<Rat> formal_log_coefficients(const CurveSpec& e, size_t n);
// p-adic elliptic logarithm of a point of E(Q_{p^2}); multiplies into the formal group first.
// `multiplier` receives the integer m with m P in the formal group
QuadExt formal_elliptic_log(const CurveSpec& e, const LocalCurve& c, const LocalPoint& P, long prec,
                            long* multiplier = nullptr);
// elliptic logarithm of the Tate-curve image of J: log_q(J)/u, with log_q(q) = 0
QuadExt tate_elliptic_log(const TateCurveData& d, const BranchValue& J);
// the q-branch logarithm log_q(J) = log J - (ord J / ord q) log q
QuadExt log_q(const TateCurveData& d, const BranchValue& J);
// p^ord exp(log) for an (ord, log) pair with integral ord
QuadExt period_value(const Int& p, const BranchValue& v, long prec);

struct DarmonRequest {
  CurveSpec curve;
  Int p;
  Int D;
  long moments = 12;
  // genus character D = d1 d2; d1 = d2 = 1 (or d1 = D) is the trivial character
  Int d1 = 1, d2 = 1;
};

struct ClassPeriod {
  QuadForm form;
  long class_index = 0;
  int chi = 1;
  QuadExt tau;
  Mat2 gamma;
  BranchValue period;
  QuadExt elliptic_log;
  LocalPoint point;
};

enum class RecognitionOutcome { Matched, Multiple, Algebraic, Torsion, Unrecognized };
std::string to_string(RecognitionOutcome o);

struct Recognition {
  RecognitionOutcome outcome = RecognitionOutcome::Unrecognized;
  // field Q(sqrt field_disc) of the matched point
  Int field_disc = 1;
  QuadPoint global;
  // elliptic log of the Darmon point = multiplier * elliptic log of the global point
  Rat multiplier = 0;
  std::vector<Int> polynomial;
  // valuation of the residual in the comparison
  long agreement = 0;
};

struct DarmonResult {
  DarmonRequest request;
  int sign = 1;
  CharacterData character;
  long h_plus = 0;
  long precision = 0;
  Rat normalization;
  long lift_iterations = 0;
  std::vector<ClassPeriod> classes;
  BranchValue combined;
  QuadExt elliptic_log;
  LocalPoint point;
  // combined point computed as the chi-weighted sum of the class points; equal to `point` up to q-torsion
  bool group_law_ok = false;
  // J(gamma^{-1}) = J^{-1}, J at the conjugate root equals Frob(J), independence of the base cusp
  bool inverse_ok = false, conjugate_ok = false, base_point_ok = false;
  // eigenvalue (+1 or -1) of Frobenius on the chi-component, 0 if neither
  int frobenius_eigenvalue = 0;
  Recognition recognition;
  TateCurveData tate;
};

// sign of the modular symbol attached to chi: the value of chi on the class of the non-trivial
// archimedean sign change
int character_sign(const QuadraticOrderData& d, const CharacterData& chi);

std::shared_ptr<const OverconvergentSymbol> lift_for_darmon(const DarmonRequest& req, int sign);

DarmonResult darmon_point(const DarmonRequest& req, std::shared_ptr<const OverconvergentSymbol> lift = nullptr,
                          bool recognize = true);

// global candidates of infinite order over Q(sqrt D): rational points, points with x in Q and y in sqrt D Q,
// and points with x outside Q
std::vector<QuadPoint> global_candidates(const CurveSpec& e, const Int& D, long bound);

Recognition recognize_point(const CurveSpec& e, const TateCurveData& tate, const QuadExt& elliptic_log,
                            const LocalPoint& point, const std::vector<Int>& fields, long prec, long bound);

struct ResummationReport {
  bool ok = false;
  long checked = 0;
  long agreement = 0;
  // reduction-independent totals sum chi(c_i) J'(c c_i), one per class c, after twisting by chi(c)
  std::vector<QuadExt> twisted_sums;
};

// recompute the periods of every class c c_i from a non-reduced representative of the composed form and
// compare chi(c) sum_i chi(c_i) J(c c_i) with the original chi-sum
ResummationReport class_permutation_resummation(const DarmonResult& r, const PeriodHomomorphism& d, long prec);

}  // namespace darmon
