#pragma once

#include <string>
#include <vector>

namespace renhopf {

enum class Status { Pass, Fail, Undecidable };

/// Outcome of a verification suite: one line per slice or item.
struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::vector<std::string> lines;

  void record(const std::string& item, bool ok, const std::string& detail = "");
  void undecidable(const std::string& item, const std::string& why);
  void merge(const CheckResult& other);
  bool passed() const { return status == Status::Pass; }
};

const char* status_str(Status s);
int exit_code(Status s);

}  // namespace renhopf
