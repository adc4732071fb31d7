#pragma once

#include <filesystem>
#include <functional>

#include "darmon/cache.hpp"

namespace darmon {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  // smaller depths and sample counts for the CLI selftest
  bool reduced = false;
  // golden certificates to replay; skipped when empty
  std::filesystem::path golden_dir;
  // run only these criteria (all when empty)
  std::vector<int> only;
  std::function<void(const CheckResult&)> on_result;
};

// genus of X_0(N) from the index, elliptic points and cusps
long genus_x0(long N);
// #E(F_l) by direct enumeration of affine points plus infinity
long count_points(const CurveSpec& e, long l);

std::vector<CheckResult> run_acceptance(const SuiteOptions& opt);

LInvariantResult compute_L_invariant(std::shared_ptr<const OverconvergentSymbol> lift);

// detail strings are kept, timings are not, so the certificate is reproducible
Json selftest_certificate(const std::vector<CheckResult>& results, bool reduced);

// certificates used by the determinism check and shipped as golden files
std::vector<std::pair<std::string, Json>> golden_certificates(const Cache& cache);

}  // namespace darmon
