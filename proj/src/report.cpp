#include "renhopf/report.hpp"

namespace renhopf {

void CheckResult::record(const std::string& item, bool ok, const std::string& detail) {
  std::string line = item + ": " + (ok ? "PASS" : "FAIL");
  if (!detail.empty()) line += " (" + detail + ")";
  lines.push_back(line);
  if (!ok) status = Status::Fail;
}

void CheckResult::undecidable(const std::string& item, const std::string& why) {
  lines.push_back(item + ": UNDECIDABLE (" + why + ")");
  if (status == Status::Pass) status = Status::Undecidable;
}

void CheckResult::merge(const CheckResult& other) {
  for (const auto& l : other.lines) lines.push_back(other.name.empty() ? l : other.name + " " + l);
  if (other.status == Status::Fail) status = Status::Fail;
  else if (other.status == Status::Undecidable && status == Status::Pass) status = Status::Undecidable;
}

const char* status_str(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Undecidable: return "UNDECIDABLE";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Undecidable: return 2;
  }
  return 1;
}

}  // namespace renhopf
