#pragma once

#include "darmon/measure.hpp"

namespace darmon {

// moments m_j = int_B (t - c_B)^j dmu, j < M; for a ball at infinity t is replaced by 1/t
struct MomentDistribution {
  Int p;
  long M = 0;
  Ball ball;
  std::vector<Int> moments;
  // m_j is known modulo p^precision[j]
  std::vector<long> precision;
};

// truncated power series arithmetic over Z/p^K used for moment pushforwards
// R[j][k] = coefficient of v^k in ((a v + b)/(c v + d) - center)^j modulo `modulus`, j, k < M; d must be a unit
std::vector<Int> mobius_matrix(const Int& a, const Int& b, const Int& c, const Int& d, const Int& center, long M,
                               const Int& modulus);
std::vector<Int> mobius_moments(const Int& a, const Int& b, const Int& c, const Int& d, const Int& center,
                                const std::vector<Int>& m, const Int& modulus);

class OverconvergentSymbol {
 public:
  static OverconvergentSymbol lift(std::shared_ptr<const EigenSymbol> phi, const Int& p, long M);
  // rebuild from stored generator moments (cache load); the U_p defect is re-checked
  static OverconvergentSymbol from_moments(std::shared_ptr<const EigenSymbol> phi, const Int& p, long M,
                                           std::vector<std::vector<Int>> moments, long iterations);

  const Int& prime() const { return p_; }
  long moment_count() const { return M_; }
  long ap() const { return ap_; }
  long tame_level() const { return m_level_; }
  long iterations() const { return iterations_; }
  const Int& modulus() const { return mod_; }
  const EigenSymbol& symbol() const { return *phi_; }
  std::shared_ptr<const EigenSymbol> symbol_ptr() const { return phi_; }
  const std::vector<std::vector<Int>>& generator_moments() const { return gen_; }

  // moments about 0 of mu_{r->s} restricted to Z_p; m_j is known modulo p^(M-j)
  std::vector<Int> path_moments(const Cusp& r, const Cusp& s) const;
  MomentDistribution moments_on_ball(const Cusp& r, const Cusp& s, const Ball& b) const;
  std::vector<std::vector<Int>> apply_up(const std::vector<std::vector<Int>>& v) const;
  // smallest j with U_p Phi - a_p Phi nonzero in moment j modulo p^(M-j), or -1 if none
  long up_defect() const;

 private:
  std::shared_ptr<const EigenSymbol> phi_;
  Int p_;
  long M_ = 1;
  long ap_ = 1;
  long m_level_ = 1;
  long iterations_ = 0;
  Int mod_;
  std::vector<std::vector<Int>> gen_;
  struct Block {
    size_t src;
    std::vector<Int> mat;
  };
  std::vector<std::vector<Block>> up_;

  void init(std::shared_ptr<const EigenSymbol> phi, const Int& p, long M);
  void build_up();
};

}  // namespace darmon
