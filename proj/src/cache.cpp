#include "darmon/cache.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace darmon {

namespace fs = std::filesystem;

fs::path Cache::default_dir() {
  if (const char* d = std::getenv("DARMON_CACHE_DIR"); d && *d) return fs::path(d);
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return fs::path(x) / "darmon";
  if (const char* h = std::getenv("HOME"); h && *h) return fs::path(h) / ".cache" / "darmon";
  return fs::temp_directory_path() / "darmon-cache";
}

std::optional<Json> Cache::load(const std::string& name, const Json& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(dir_ / (name + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  Json j = Json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("schema", "") != "darmon-cache" || j.value("version", "") != std::to_string(kCacheVersion))
    return std::nullopt;
  if (!j.contains("key") || j["key"] != key || !j.contains("payload")) return std::nullopt;
  return j["payload"];
}

void Cache::store(const std::string& name, const Json& key, const Json& payload) const {
  if (!enabled()) return;
  static std::atomic<long> counter{0};
  fs::create_directories(dir_);
  Json j{{"schema", "darmon-cache"}, {"version", std::to_string(kCacheVersion)}, {"key", key}, {"payload", payload}};
  fs::path final_path = dir_ / (name + ".json");
  fs::path tmp = dir_ / (name + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp.string());
    out << j.dump() << "\n";
    out.flush();
    if (!out) throw Error("cannot write cache file " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

Json lift_cache_key(const CurveSpec& e, const Int& p, long M, int sign, const Rat& scalar) {
  return Json{{"kind", "lift"},
              {"curve", to_json(e)},
              {"p", to_json(p)},
              {"moments", std::to_string(M)},
              {"sign", std::to_string(sign)},
              {"normalization", to_json(scalar)},
              {"branches", branch_choices(p)}};
}

std::string lift_cache_name(const CurveSpec& e, const Int& p, long M, int sign) {
  std::string label;
  for (char c : e.label) label += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return "lift_" + label + "_p" + p.get_str() + "_M" + std::to_string(M) + (sign > 0 ? "_plus" : "_minus");
}

std::shared_ptr<const OverconvergentSymbol> cached_lift(const Cache& cache, const CurveSpec& e, const Int& p, long M,
                                                        int sign, bool* hit) {
  auto phi = std::make_shared<const EigenSymbol>(eigensymbol_for_curve(e, sign));
  Json key = lift_cache_key(e, p, M, sign, phi->scalar);
  std::string name = lift_cache_name(e, p, M, sign);
  if (hit) *hit = false;
  if (auto payload = cache.load(name, key)) {
    try {
      std::vector<std::vector<Int>> mom;
      for (const auto& row : payload->at("generator_moments")) {
        std::vector<Int> v;
        for (const auto& x : row) v.push_back(int_from_json(x));
        mom.push_back(std::move(v));
      }
      long it = std::stol(payload->at("iterations").get<std::string>());
      auto lift = std::make_shared<const OverconvergentSymbol>(OverconvergentSymbol::from_moments(phi, p, M, mom, it));
      if (hit) *hit = true;
      return lift;
    } catch (const std::exception&) {
    }
  }
  auto lift = std::make_shared<const OverconvergentSymbol>(OverconvergentSymbol::lift(phi, p, M));
  Json cert = lift_certificate(e, *lift);
  cache.store(name, key, Json{{"generator_moments", cert["result"]["generator_moments"]},
                              {"iterations", cert["result"]["iterations"]}});
  return lift;
}

}  // namespace darmon
