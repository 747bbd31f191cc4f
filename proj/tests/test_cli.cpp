#include "renhopf/cli.hpp"

#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using namespace renhopf;

namespace {

RunConfig config(const char* theory) {
  RunConfig cfg;
  cfg.theory = theory;
  return cfg;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(RENHOPF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("enumerate lists the QED photon self-energies") {
  // Vacuum polarization with k <= 2 mass insertions: none, one, two on one
  // fermion line, one on each line.
  std::ostringstream out;
  CHECK(cmd_enumerate(config("qed"), "photon", 1, out) == 0);
  CHECK(out.str().find("photon L=1: 4 graphs") != std::string::npos);
  std::ostringstream empty;
  cmd_enumerate(config("qed"), "photon", 0, empty);
  CHECK(empty.str().find("photon L=0: 0 graphs") != std::string::npos);
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_enumerate(config("qed"), "gluon", 1, sink), UsageError);
}

TEST_CASE("records output is line-oriented key: value") {
  RunConfig cfg = config("phi3");
  cfg.format = Format::Records;
  cfg.lmax = 2;
  std::ostringstream out;
  CHECK(cmd_check(cfg, "coassoc", out) == 0);
  std::istringstream in(out.str());
  std::string line;
  int items = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CHECK(line.find(": ") != std::string::npos);
    items += line.rfind("item: ", 0) == 0;
  }
  CHECK(items > 0);
  CHECK(out.str().find("status: PASS") != std::string::npos);
}

TEST_CASE("master reports the YM coupling relations") {
  std::ostringstream out;
  CHECK(cmd_master(config("yang_mills"), out) == 0);
  CHECK(out.str().find("lA4 = lA3^2") != std::string::npos);
  std::ostringstream sink;
  CHECK_THROWS_AS(cmd_master(config("qed"), sink), UsageError);
}

TEST_CASE("report-all is deterministic") {
  RunConfig cfg = config("phi3");
  cfg.lmax = 2;
  std::ostringstream a, b;
  cmd_report_all(cfg, a);
  cmd_report_all(cfg, b);
  CHECK(a.str() == b.str());
  cfg.seed = 2;
  std::ostringstream c;
  cmd_report_all(cfg, c);
  CHECK(c.str() != a.str());
}

TEST_CASE("exit codes of the command-line tool") {
  CHECK(run_cli("--theory phi3 --Lmax 2 check coassoc") == 0);
  CHECK(run_cli("check coassoc --theory phi3 --Lmax 1") == 0);
  CHECK(run_cli("--theory phi3 check nosuch") == 3);
  CHECK(run_cli("--theory missing.json check coassoc") == 3);
  CHECK(run_cli("--theory qed master") == 3);
  CHECK(run_cli("--theory qed enumerate --residue gluon") == 3);
  CHECK(run_cli("--theory qed --format xml enumerate") == 3);
  CHECK(run_cli("--theory qed") == 3);
}
