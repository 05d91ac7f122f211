#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace ewloci;

namespace {

struct Output {
  std::string format = "json";
  std::string report_file;
};

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--report", out.report_file, "also write the JSON report here");
}

void add_source(CLI::App* sub, cli::CoverSource& src, bool with_surface) {
  sub->add_option("--descriptor", src.descriptor_file, "cover descriptor JSON");
  if (with_surface) sub->add_option("--surface", src.surface_file, "cover file written by build-cover");
  sub->add_option("--base", src.base, "catalog name or surface file");
  sub->add_option("--k", src.k);
  sub->add_option("--a", src.a)->delimiter(',');
  sub->add_option("--m", src.m);
}

int emit(const cli::Outcome& o, const Output& out) {
  if (!out.report_file.empty()) {
    std::ofstream f(out.report_file);
    f << o.report.dump(2) << "\n";
    if (!f) {
      std::cerr << "cannot write " << out.report_file << "\n";
      return cli::kUsage;
    }
  }
  if (out.format == "text") {
    std::cout << cli::render_text(o.report);
  } else {
    std::cout << o.report.dump(2) << "\n";
  }
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclic covers of the pillowcase and their cylinder twins"};
  app.set_version_flag("--version", cli::kVersion);
  app.require_subcommand(1);

  Output out;

  std::vector<int> kappa, a;
  int k = 0, k_max = 12;
  auto* check = app.add_subcommand("check-ew", "test a cover datum for the generalized EW condition");
  check->add_option("--kappa", kappa, "orders, comma separated")->required()->delimiter(',');
  check->add_option("--k", k)->required();
  check->add_option("--a", a, "residues, in the order of --kappa")->required()->delimiter(',');
  add_output(check, out);

  auto* enumerate = app.add_subcommand("enumerate", "list cover data up to unit scaling");
  enumerate->add_option("--kappa", kappa)->required()->delimiter(',');
  enumerate->add_option("--k-max", k_max);
  add_output(enumerate, out);

  cli::CoverSource build_src;
  std::optional<std::string> out_file;
  auto* build = app.add_subcommand("build-cover", "build the cover of a square-tiled base");
  add_source(build, build_src, false);
  build->add_option("--out", out_file, "write the cover surface here");
  add_output(build, out);

  cli::CoverSource verify_src;
  cli::VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "certify cylinder twins and related checks");
  add_source(verify, verify_src, true);
  verify->add_option("--sweep", vopt.sweep, "direction bound B");
  verify->add_flag("--orbit", vopt.orbit, "twin check on the SL2(Z) orbit");
  verify->add_option("--orbit-max", vopt.orbit_max);
  verify->add_option("--blocking", vopt.blocking, "number of sampled blocking checks");
  verify->add_option("--seed", vopt.seed);
  add_output(verify, out);

  int d = 1;
  std::size_t budget = SearchLimits{}.max_candidates;
  auto* geminal = app.add_subcommand("geminal-reps", "search geminal representations into Sym(4d)");
  geminal->add_option("--d", d)->required();
  geminal->add_option("--budget", budget, "candidate budget");
  add_output(geminal, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kUsage;
  }

  cli::Outcome o;
  if (*check) {
    o = cli::cmd_check_ew(kappa, k, a);
  } else if (*enumerate) {
    o = cli::cmd_enumerate(kappa, k_max);
  } else if (*build) {
    o = cli::cmd_build_cover(build_src, out_file);
  } else if (*verify) {
    o = cli::cmd_verify(verify_src, vopt);
  } else {
    o = cli::cmd_geminal_reps(d, budget);
  }
  return emit(o, out);
}
