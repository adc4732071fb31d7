#pragma once

#include <filesystem>
#include <optional>

#include "darmon/certificate.hpp"

namespace darmon {

constexpr int kCacheVersion = 1;

// directory of JSON entries; every entry stores its full key and is ignored unless key and version match
class Cache {
 public:
  Cache() = default;
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  // DARMON_CACHE_DIR, else $XDG_CACHE_HOME/darmon, else $HOME/.cache/darmon
  static std::filesystem::path default_dir();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }
  std::optional<Json> load(const std::string& name, const Json& key) const;
  // write-temp-then-rename
  void store(const std::string& name, const Json& key, const Json& payload) const;

 private:
  std::filesystem::path dir_;
};

Json lift_cache_key(const CurveSpec& e, const Int& p, long M, int sign, const Rat& scalar);
std::string lift_cache_name(const CurveSpec& e, const Int& p, long M, int sign);

// loads the eigen-lift from the cache (re-checking its U_p relation) or computes and stores it
std::shared_ptr<const OverconvergentSymbol> cached_lift(const Cache& cache, const CurveSpec& e, const Int& p, long M,
                                                        int sign, bool* hit = nullptr);

}  // namespace darmon
