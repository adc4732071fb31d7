#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>

#include "darmon/selftest.hpp"

using namespace darmon;

int main(int argc, char** argv) {
  set_complex_precision_bits(128);
  SuiteOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--golden-dir") && i + 1 < argc) {
      opt.golden_dir = argv[++i];
    } else if (!std::strcmp(argv[i], "--write-golden") && i + 1 < argc) {
      std::filesystem::path dir = argv[++i];
      std::filesystem::create_directories(dir);
      auto tmp = std::filesystem::temp_directory_path() / "darmon-golden-cache";
      std::filesystem::remove_all(tmp);
      for (const auto& [name, cert] : golden_certificates(Cache(tmp))) {
        std::ofstream out(dir / (name + ".json"), std::ios::binary);
        out << dump_certificate(cert);
        std::cout << "wrote " << (dir / (name + ".json")).string() << "\n";
      }
      std::filesystem::remove_all(tmp);
      return 0;
    } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      opt.only.push_back(std::atoi(argv[++i]));
    }
  }
  const std::map<int, double> budget = {{1, 10}, {2, 30}, {3, 120}, {4, 120}, {5, 10},
                                        {6, 300}, {7, 60}, {8, 300}, {9, 60}};
  bool all = true;
  opt.on_result = [&](const CheckResult& r) {
    bool in_time = r.seconds <= budget.at(r.id);
    bool pass = r.pass && in_time;
    all = all && pass;
    std::printf("criterion %d: %s  %s (%.2fs%s) %s\n", r.id, pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds,
                in_time ? "" : ", over budget", r.detail.c_str());
    std::fflush(stdout);
  };
  run_acceptance(opt);
  return all ? 0 : 1;
}
