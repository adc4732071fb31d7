#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "darmon/modsym.hpp"

namespace darmon {

// a + p^n Z_p (0 <= a < p^n), or at infinity {t : 1/t in a + p^n Z_p} with p | a and n >= 1
struct Ball {
  Int a = 0;
  long n = 0;
  bool at_infinity = false;

  static Ball finite(const Int& a, long n, const Int& p);
  static Ball infinite(const Int& a, long n, const Int& p);
  std::vector<Ball> children(const Int& p) const;
  std::string key() const;
  bool operator==(const Ball& o) const { return a == o.a && n == o.n && at_infinity == o.at_infinity; }
};

// the p + 1 balls of depth one
std::vector<Ball> depth_one_balls(const Int& p);
// all balls of depth n partitioning P^1(Q_p): p^n finite ones and p^(n-1) at infinity
std::vector<Ball> balls_at_depth(const Int& p, long n);

class BoundaryMeasure {
 public:
  BoundaryMeasure(std::shared_ptr<const EigenSymbol> phi, const Int& p, const Cusp& r, const Cusp& s);

  const Int& prime() const { return p_; }
  long ap() const { return ap_; }
  long tame_level() const { return m_; }
  const Cusp& source() const { return r_; }
  const Cusp& target() const { return s_; }
  const EigenSymbol& symbol() const { return *phi_; }
  std::shared_ptr<const EigenSymbol> symbol_ptr() const { return phi_; }
  Int mass(const Ball& b) const;
  // the matrix (1 0; M 1) transporting the complement of Z_p into M^{-1} + pZ_p
  Mat2 patch() const { return Mat2{1, 0, m_, 1}; }

 private:
  std::shared_ptr<const EigenSymbol> phi_;
  Int p_;
  long ap_;
  long m_;
  Cusp r_, s_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, Int> memo_;
};

Int measure_of_ball(const EigenSymbol& phi, const Int& p, long ap, const Cusp& r, const Cusp& s, const Ball& b);
// a_p of a p-new symbol; rejects p not exactly dividing the level
long p_new_eigenvalue(const EigenSymbol& phi, const Int& p);

struct HarmonicityReport {
  bool ok = true;
  size_t checked = 0;
  std::optional<Ball> counterexample;
};

HarmonicityReport check_harmonicity(const std::function<Int(const Ball&)>& mu, const Int& p, long depth);

}  // namespace darmon
