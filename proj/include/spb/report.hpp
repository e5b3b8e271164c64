#pragma once

#include <string>
#include <vector>

namespace spb {

// One verification record: a named check, the mathematical statement it
// certifies, and an outcome. Witness text is only set on failure/skip.
struct CheckRecord {
  std::string id;
  std::string statement;
  std::string status;  // "pass" | "fail" | "skipped" | "refused"
  std::string witness;
  double ms = -1;  // wall time; negative = not measured
};

struct CheckList {
  std::vector<CheckRecord> checks;

  void add(const std::string& id, const std::string& statement, bool ok,
           const std::string& witness = "") {
    checks.push_back({id, statement, ok ? "pass" : "fail", ok ? "" : witness, -1});
  }
  void skip(const std::string& id, const std::string& statement, const std::string& why) {
    checks.push_back({id, statement, "skipped", why, -1});
  }
  void refuse(const std::string& id, const std::string& statement, const std::string& why) {
    checks.push_back({id, statement, "refused", why, -1});
  }
  void merge(const CheckList& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }

  bool pass() const {
    for (auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  unsigned fail_count() const {
    unsigned n = 0;
    for (auto& c : checks) n += c.status == "fail";
    return n;
  }
  const CheckRecord* first_fail() const {
    for (auto& c : checks)
      if (c.status == "fail") return &c;
    return nullptr;
  }
};

}  // namespace spb
