#pragma once

#include "renhopf/report.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace renhopf {

enum class Format { Text, Records };

struct RunConfig {
  std::string theory;           // path or bundled name
  std::optional<int> lmax;      // per-suite default when unset
  int order = 0;                // series order; 0 picks per-suite defaults
  int zmax = 0;                 // <= 0 means 2 lmax + 2
  std::uint64_t seed = 1;
  Format format = Format::Text;
  std::optional<bool> massless; // overrides the theory file
};

/// Thrown for bad names or unreadable inputs; maps to exit code 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_names();
/// Loop order a suite runs at when --Lmax is not given.
int default_lmax(const std::string& suite, int loop_cutoff);

CheckResult run_suite(const RunConfig& cfg, const std::string& suite);

/// Each command writes its report to `out` and returns the exit code.
int cmd_enumerate(const RunConfig& cfg, const std::string& residue, std::optional<int> loops, std::ostream& out);
int cmd_check(const RunConfig& cfg, const std::string& suite, std::ostream& out);
int cmd_birkhoff(const RunConfig& cfg, std::ostream& out);
int cmd_master(const RunConfig& cfg, std::ostream& out);
int cmd_report_all(const RunConfig& cfg, std::ostream& out);

void print_result(const RunConfig& cfg, const CheckResult& r, std::ostream& out);

}  // namespace renhopf
