#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "darmon/cache.hpp"
#include "darmon/certificate.hpp"
#include "darmon/selftest.hpp"

using namespace darmon;
namespace fs = std::filesystem;

namespace {
fs::path fresh_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("darmon-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}
}  // namespace

TEST_SUITE("certificate") {
  TEST_CASE("numbers serialize as decimal strings and round trip") {
    Int big("-123456789012345678901234567890");
    CHECK(to_json(big).is_string());
    CHECK(int_from_json(to_json(big)) == big);
    CHECK(rat_from_json(to_json(Rat(-7, 12))) == Rat(-7, 12));
    Padic x = Padic::from_rat(Int(11), Rat(5, 121), 9);
    Padic y = padic_from_json(to_json(x), Int(11));
    CHECK(y.valuation() == x.valuation());
    CHECK(y.equals_mod(x, x.abs_precision()));
    QuadExt z = QuadExt::from_coords(Int(7), Rat(3), Rat(49), 10);
    QuadExt w = quadext_from_json(to_json(z), Int(7));
    CHECK(w.equals_mod(z, 10));
    CHECK(w.abs_precision() == z.abs_precision());
    QuadForm f{3, -5, 7};
    CHECK(form_from_json(to_json(f)) == f);
    Complex c(Real("1.25"), Real("-0.5"));
    Complex c2 = complex_from_json(to_json(c));
    CHECK((c2 - c).abs() < Real("1e-30"));
    CHECK(to_json(c).contains("digits"));
  }

  TEST_CASE("eigensymbol certificate verifies; tampering is detected") {
    CurveSpec e = curve_from_label("11a");
    auto S = ManinSymbolSpace::build(11, 1);
    Json cert = eigensymbol_certificate(e, eigensymbol_for_curve(e, 1), S);
    CHECK(verify_certificate(cert).ok);
    Json bad = cert;
    bad["result"]["generators"][3][2] = "17";
    CHECK_FALSE(verify_certificate(bad).ok);
    Json wrong_version = cert;
    wrong_version["version"] = "999";
    CHECK_FALSE(verify_certificate(wrong_version).ok);
    Json unknown = cert;
    unknown["kind"] = "mystery";
    CHECK_FALSE(verify_certificate(unknown).ok);
  }

  TEST_CASE("golden set verifies and is deterministic") {
    fs::path d1 = fresh_dir("g1"), d2 = fresh_dir("g2");
    auto a = golden_certificates(Cache(d1));
    auto b = golden_certificates(Cache(d2));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(dump_certificate(a[i].second) == dump_certificate(b[i].second));
      VerifyReport rep = verify_certificate(a[i].second);
      CHECK_MESSAGE(rep.ok, a[i].first);
    }
    for (auto& [name, cert] : a) {
      if (cert["kind"] != "darmon-point") continue;
      Json bad = cert;
      bad["result"]["point"]["x"]["a"] = "12345";
      CHECK_FALSE(verify_certificate(bad).ok);
      Json bad2 = cert;
      bad2["result"]["classes"][0]["period"]["log"]["a"] = "1";
      CHECK_FALSE(verify_certificate(bad2).ok);
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
  }

  TEST_CASE("heegner certificate rejects a moved point") {
    CurveSpec e = curve_from_label("37a");
    Json cert = heegner_certificate(e, heegner_point(e, Int(-7)));
    CHECK(verify_certificate(cert).ok);
    Json bad = cert;
    bad["result"]["trace"]["re"] = "0.5";
    CHECK_FALSE(verify_certificate(bad).ok);
  }
}

TEST_SUITE("cache") {
  TEST_CASE("store, load, key mismatch, corruption and version mismatch") {
    fs::path dir = fresh_dir("cache");
    Cache c(dir);
    Json key{{"a", "1"}};
    c.store("entry", key, Json{{"v", "42"}});
    auto got = c.load("entry", key);
    REQUIRE(got.has_value());
    CHECK((*got)["v"] == "42");
    CHECK_FALSE(c.load("entry", Json{{"a", "2"}}).has_value());
    CHECK_FALSE(c.load("missing", key).has_value());
    {
      std::ofstream out(dir / "entry.json", std::ios::trunc);
      out << "{\"schema\": \"darmon-cache\", \"vers";
    }
    CHECK_FALSE(c.load("entry", key).has_value());
    {
      std::ofstream out(dir / "entry.json", std::ios::trunc);
      out << Json{{"schema", "darmon-cache"}, {"version", "0"}, {"key", key}, {"payload", {{"v", "1"}}}}.dump();
    }
    CHECK_FALSE(c.load("entry", key).has_value());
    for (const auto& ent : fs::directory_iterator(dir)) CHECK(ent.path().extension() == ".json");
    fs::remove_all(dir);
  }

  TEST_CASE("cached lifts: miss, hit, and recovery from a corrupt entry") {
    fs::path dir = fresh_dir("lift");
    Cache c(dir);
    CurveSpec e = curve_from_label("11a");
    bool hit = true;
    auto a = cached_lift(c, e, Int(11), 6, 1, &hit);
    CHECK_FALSE(hit);
    auto b = cached_lift(c, e, Int(11), 6, 1, &hit);
    CHECK(hit);
    CHECK(a->generator_moments() == b->generator_moments());
    fs::path file = dir / (lift_cache_name(e, Int(11), 6, 1) + ".json");
    REQUIRE(fs::exists(file));
    {
      std::ofstream out(file, std::ios::trunc);
      out << "garbage";
    }
    auto d = cached_lift(c, e, Int(11), 6, 1, &hit);
    CHECK_FALSE(hit);
    CHECK(d->generator_moments() == a->generator_moments());
    CHECK(lift_cache_key(e, Int(11), 6, 1, Rat(1)) != lift_cache_key(e, Int(11), 6, 1, Rat(2)));
    fs::remove_all(dir);
  }

  TEST_CASE("environment override of the cache directory") {
    ::setenv("DARMON_CACHE_DIR", "/tmp/darmon-env-override", 1);
    CHECK(Cache::default_dir() == fs::path("/tmp/darmon-env-override"));
    ::unsetenv("DARMON_CACHE_DIR");
    CHECK(Cache::default_dir() != fs::path("/tmp/darmon-env-override"));
  }
}

TEST_SUITE("selftest") {
  TEST_CASE("selftest certificate is replayable") {
    std::vector<CheckResult> rs = {{1, "one", true, "fine", 0.1}, {2, "two", false, "broken", 0.2}};
    Json cert = selftest_certificate(rs, true);
    CHECK_FALSE(cert["result"]["all_pass"].get<bool>());
    CHECK_FALSE(verify_certificate(cert).ok);
    rs[1].pass = true;
    CHECK(verify_certificate(selftest_certificate(rs, true)).ok);
  }
}
