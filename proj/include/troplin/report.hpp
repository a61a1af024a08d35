#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace troplin {

enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckStatus status);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

/// Outcome of a verification run. The overall status is fail iff some check
/// failed; skipped checks do not affect it.
struct Report {
  std::string subject;
  std::vector<Check> checks;

  void pass(std::string name, std::string detail = {});
  void fail(std::string name, std::string detail);
  void skip(std::string name, std::string detail);
  void add(Check check) { checks.push_back(std::move(check)); }

  bool passed() const;
  std::vector<const Check*> failures() const;
};

}  // namespace troplin
