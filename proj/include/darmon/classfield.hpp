#pragma once

#include "darmon/arith.hpp"
#include "darmon/modsym.hpp"

namespace darmon {

struct QuadForm {
  Int a, b, c;
  Int disc() const { return b * b - 4 * a * c; }
  Int eval(const Int& x, const Int& y) const { return a * x * x + b * x * y + c * y * y; }
  // f o g, i.e. (x, y) -> f(g (x, y)^t)
  QuadForm transform(const Mat2& g) const;
  bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const QuadForm& o) const;
  std::string str() const;
};

struct QuadraticOrderData {
  Int D;
  long h_plus = 0;
  // one reduced representative per (narrow) class, principal class first
  std::vector<QuadForm> forms;
  // every reduced form of each class (the rho-cycle for D > 0)
  std::vector<std::vector<QuadForm>> cycles;
  // fundamental unit (t + u sqrt D)/2 and its norm; totally positive generator (tp + up sqrt D)/2
  Int eps_t, eps_u;
  int eps_norm = 1;
  Int tp_t, tp_u;
};

QuadraticOrderData narrow_class_data(const Int& D);
bool is_reduced(const QuadForm& f);
// one rho step (D > 0) with its SL_2(Z) transformation: rho(f) = f o g
QuadForm rho(const QuadForm& f, Mat2* g = nullptr);
// reduced form properly equivalent to f together with g with f o g = result
QuadForm reduce_form(const QuadForm& f, Mat2* g = nullptr);
long class_index(const QuadraticOrderData& d, const QuadForm& f);
QuadForm compose(const QuadForm& f, const QuadForm& g);
std::vector<std::vector<long>> composition_table(const QuadraticOrderData& d);
// equivalent form with positive first coefficient divisible by m
QuadForm form_with_divisible_a(const QuadForm& f, const Int& m, Mat2* g = nullptr);

// the automorph of f attached to the unit (t + u sqrt D)/2
Mat2 automorph(const QuadForm& f, const Int& t, const Int& u);

struct OptimalEmbedding {
  QuadForm form;
  long class_index = 0;
  QuadExt tau;
  // tau = (-b + root_sign sqrt D)/(2a); sqrt D in Q_{p^2} is the root with omega-coordinate residue in
  // [1, (p-1)/2], and root_sign = +1 keeps gamma's eigenvalue equal to (t + u sqrt D)/2 for every form
  int root_sign = 1;
  Mat2 gamma;
  // gamma (tau, 1)^t = unit * (tau, 1)^t holds to full precision
  bool eigen_ok = false;
};

std::vector<OptimalEmbedding> optimal_embeddings(const Int& D, long N, const Int& p, long prec);
OptimalEmbedding embedding_for_form(const QuadraticOrderData& d, const QuadForm& f, const Int& p, long prec);

struct CharacterData {
  Int d1 = 1, d2 = 1;
  std::vector<int> values;
  std::string str() const;
};

CharacterData trivial_character(const QuadraticOrderData& d);
CharacterData genus_character(const QuadraticOrderData& d, const Int& d1, const Int& d2);

struct UnitCycle {
  Int t, u;
  int orientation = 1;
  Mat2 principal_automorph;
};

UnitCycle unit_cycle(const QuadraticOrderData& d);

}  // namespace darmon
