#include "renhopf/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

using namespace renhopf;

int main(int argc, char** argv) {
  CLI::App app{"Renormalization Hopf algebra toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  int lmax = -1;
  std::string format = "text", massless;
  app.add_option("--theory", cfg.theory, "theory file or bundled name")->required();
  app.add_option("--Lmax", lmax, "loop order (default depends on the command)");
  app.add_option("--order", cfg.order, "series order D (0 = per-suite default)");
  app.add_option("--zmax", cfg.zmax, "z order of toy rules (0 = 2 Lmax + 2)");
  app.add_option("--seed", cfg.seed, "seed for toy rules and random samples");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "records"}));
  app.add_option("--massless", massless, "override the theory's massless flag")->check(CLI::IsMember({"on", "off"}));

  std::string residue;
  int loops = -1;
  auto* enumerate = app.add_subcommand("enumerate", "list 1PI graphs with symmetry factors and gradings");
  enumerate->add_option("--residue", residue, "residue name (default: all)");
  enumerate->add_option("--loops", loops, "single loop number (default: 1..Lmax)");

  std::string suite;
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

  auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff decomposition tables for the toy rules");
  auto* master = app.add_subcommand("master", "master-equation constraints of the theory's action");
  auto* report = app.add_subcommand("report-all", "every suite and the Birkhoff tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }
  if (lmax >= 0) cfg.lmax = lmax;
  if (!massless.empty()) cfg.massless = massless == "on";
  cfg.format = format == "records" ? Format::Records : Format::Text;

  try {
    if (*enumerate) return cmd_enumerate(cfg, residue, loops >= 0 ? std::optional<int>(loops) : std::nullopt, std::cout);
    if (*check) return cmd_check(cfg, suite, std::cout);
    if (*birkhoff) return cmd_birkhoff(cfg, std::cout);
    if (*master) return cmd_master(cfg, std::cout);
    if (*report) return cmd_report_all(cfg, std::cout);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}
