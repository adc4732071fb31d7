#pragma once

#include <string>
#include <vector>

#include "darmon/cache.hpp"

namespace darmon {

// one request of the command-line front end; unused fields are ignored by a given operation
struct RunConfig {
  std::string curve = "11a";
  std::string curve_file;
  long p = 0;
  long disc = 0;
  long moments = 0;
  int sign = 0;
  long depth = 0;
  std::string character = "trivial";
  std::string cache_dir;
  bool no_cache = false;
  // darmon-point certificate consumed by `recognize`
  std::string certificate;
  long bound = 8;
  long precision = 0;
  bool reduced = true;
  std::string golden_dir;
  std::vector<int> only;
  bool verbose = false;
};

struct RunOutcome {
  Json certificate;
  // one-line human summary
  std::string message;
  // 0 when computed, 1 when a selftest criterion failed
  int status = 0;
};

const std::vector<std::string>& operation_names();
// throws PreconditionError or PrecisionError when the request cannot be computed
RunOutcome run_operation(const std::string& name, const RunConfig& cfg);

CurveSpec resolve_curve(const RunConfig& cfg);
Cache resolve_cache(const RunConfig& cfg);

}  // namespace darmon
