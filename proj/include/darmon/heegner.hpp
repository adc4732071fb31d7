#pragma once

#include "darmon/classfield.hpp"
#include "darmon/complex.hpp"
#include "darmon/curve.hpp"

namespace darmon {

struct PeriodLattice {
  // periods of 2 pi i f(z) dz attached to the +- eigensymbols: I(g) = phi+(g) omega_plus + phi-(g) omega_minus
  Complex omega_plus, omega_minus;
  std::vector<Mat2> loops;
  long terms = 0;
  // lattice of the Weierstrass model: basis (w1, w2) with w1 > 0 real and Im(w2 / w1) > 0
  Complex w1, w2;
  // generators of the real and purely imaginary sublattices
  Complex w_real, w_imag;
  bool positive_discriminant = false;
  // omega_plus = scalar_plus w_real, omega_minus = scalar_minus w_imag
  Rat scalar_plus, scalar_minus;
  bool scalars_found = false;
  Real ratio_real_part;
  // residual of the period relation on a loop not used to solve for omega_plus, omega_minus
  Real consistency_error;
  Real j_error;
  // |Omega+(conj) - Omega+| + |Omega-(conj) + Omega-| for the reflected loops
  Real conjugation_error;
};

// sum_{n <= terms} a_n / n e^{2 pi i n z}
Complex qexp_integral(const std::vector<Int>& an, const Complex& z, size_t terms);
// number of terms making the tail of the q-expansion integral below 10^{-digits} at height y
size_t terms_for_height(const Real& y, unsigned digits);
// divisor-bound estimate of the tail beyond `terms`
Real tail_bound(const Real& y, size_t terms);

PeriodLattice complex_periods(const CurveSpec& e);

struct ComplexPoint {
  bool inf = false;
  Complex x, y;
  Real residual;
};

Complex reduce_mod_lattice(const PeriodLattice& L, const Complex& z);
ComplexPoint weierstrass_map(const CurveSpec& e, const PeriodLattice& L, const Complex& z);

struct HeegnerTerm {
  QuadForm form;
  long class_index = 0;
  Complex z;
  Complex J;
  size_t terms = 0;
  Real tail;
};

struct HeegnerResult {
  Int D;
  Int beta;
  long class_number = 0;
  std::vector<HeegnerTerm> terms;
  Complex trace;
  ComplexPoint point;
  // |J(B) - J(2B)| summed over the classes
  Real doubling_error;
  // |f(g z)(cz + d)^{-2} - f(z)| for a test matrix in Gamma_0(N)
  Real modularity_error;
  // distance modulo the lattice between traces built from different representatives
  Real permutation_error;
  bool matched = false;
  RatPoint global;
  int global_sign = 1;
  Real distance;
  PeriodLattice lattice;
};

// z_K for each class: the representative (a, b, c) with N | a, b = beta mod 2N, and a minimal
std::vector<QuadForm> heegner_forms(const Int& D, long N, const Int& beta, size_t skip = 0);
HeegnerResult heegner_point(const CurveSpec& e, const Int& D);

}  // namespace darmon
