#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "darmon/operations.hpp"

using namespace darmon;

namespace {

enum Exit { kOk = 0, kFailure = 1, kPrecondition = 2, kPrecision = 3 };

void emit(const std::string& output, const Json& cert) {
  std::string text = dump_certificate(cert);
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::filesystem::path path(output);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  std::cerr << "wrote " << output << "\n";
}

int verify_files(const std::vector<std::string>& files, bool verbose) {
  bool all = true;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    Json j = Json::parse(ss.str(), nullptr, false);
    VerifyReport rep;
    if (j.is_discarded()) rep.add("valid_json", false);
    else rep = verify_certificate(j);
    std::cout << (rep.ok ? "ACCEPT " : "REJECT ") << f << " (" << rep.kind << ")\n";
    for (const auto& [name, pass] : rep.checks)
      if (!pass || verbose) std::cout << "  " << (pass ? "ok   " : "FAIL ") << name << "\n";
    all = all && rep.ok;
  }
  return all ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  set_complex_precision_bits(128);
  CLI::App app{"Stark-Heegner and Heegner points with replayable certificates"};
  app.require_subcommand(1);
  RunConfig o;
  std::string output;
  std::vector<std::string> files;

  auto curve_opts = [&](CLI::App* sub) {
    sub->add_option("--curve", o.curve, "curve label (11a, 37a, ...) or a-invariants a1,a2,a3,a4,a6");
    sub->add_option("--curve-file", o.curve_file, "file with lines 'label a1 a2 a3 a4 a6'");
  };
  auto output_opts = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "certificate path (stdout when omitted)");
    sub->add_option("--cache-dir", o.cache_dir, "lift cache directory (default: $DARMON_CACHE_DIR)");
    sub->add_flag("--no-cache", o.no_cache, "do not read or write the lift cache");
  };
  auto sign_opt = [&](CLI::App* sub, const char* help) {
    sub->add_option("--sign", o.sign, help)->check(CLI::IsMember({-1, 1}));
  };

  auto* eig = app.add_subcommand("eigensymbol", "rational eigensymbol of the curve");
  curve_opts(eig);
  output_opts(eig);
  sign_opt(eig, "+1 or -1");

  auto* lift = app.add_subcommand("lift", "overconvergent eigen-lift");
  curve_opts(lift);
  output_opts(lift);
  lift->add_option("--p", o.p, "prime of multiplicative reduction")->required();
  lift->add_option("--moments", o.moments, "moment count M (default 10)");
  sign_opt(lift, "+1 or -1");
  lift->add_option("--depth", o.depth, "also compare against Riemann sums at this depth");

  auto* linv = app.add_subcommand("l-invariant", "automorphic L-invariant against the Tate period");
  curve_opts(linv);
  output_opts(linv);
  linv->add_option("--p", o.p, "prime of multiplicative reduction")->required();
  linv->add_option("--moments", o.moments, "moment count M (default 10)");
  sign_opt(linv, "+1 or -1");

  auto* dp = app.add_subcommand("darmon-point", "Stark-Heegner point over a real quadratic field");
  curve_opts(dp);
  output_opts(dp);
  dp->add_option("--p", o.p, "prime of multiplicative reduction")->required();
  dp->add_option("--disc", o.disc, "positive discriminant D")->required();
  dp->add_option("--moments", o.moments, "moment count M (default 12)");
  dp->add_option("--character", o.character, "trivial or genus:D1,D2");
  sign_opt(dp, "expected sign of the eigensymbol");

  auto* hp = app.add_subcommand("heegner-point", "classical Heegner point through the complex uniformization");
  curve_opts(hp);
  output_opts(hp);
  hp->add_option("--disc", o.disc, "negative discriminant D")->required();

  auto* rec = app.add_subcommand("recognize", "recognize the point stored in a darmon-point certificate");
  output_opts(rec);
  rec->add_option("--certificate", o.certificate, "darmon-point certificate")->required()->check(CLI::ExistingFile);
  rec->add_option("--disc", o.disc, "search field discriminant (default: the certificate's D)");
  rec->add_option("--bound", o.bound, "height bound of the global point search");
  rec->add_option("--precision", o.precision, "compare modulo p^precision");

  auto* st = app.add_subcommand("selftest", "acceptance criteria at reduced sizes");
  output_opts(st);
  st->add_option("--golden-dir", o.golden_dir, "directory of golden certificates to replay");
  st->add_option("--only", o.only, "run only these criteria");
  st->add_flag("!--full", o.reduced, "use the full sizes of the acceptance suite");

  auto* ver = app.add_subcommand("verify", "re-check the residuals of certificates without recomputing lifts");
  ver->add_option("files", files, "certificate files")->required()->check(CLI::ExistingFile);
  ver->add_flag("--verbose", o.verbose, "list every check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ver) return verify_files(files, o.verbose);
    for (const auto& name : operation_names()) {
      if (!app.got_subcommand(name)) continue;
      RunOutcome r = run_operation(name, o);
      emit(output, r.certificate);
      if (!r.message.empty()) std::cerr << r.message << "\n";
      return r.status;
    }
  } catch (const PreconditionError& ex) {
    std::cerr << "precondition failed: " << ex.what() << "\n";
    return kPrecondition;
  } catch (const PrecisionError& ex) {
    std::cerr << "precision failure: " << ex.what() << "\n";
    return kPrecision;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
