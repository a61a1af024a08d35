#include "troplin/report.hpp"

#include <algorithm>

namespace troplin {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

void Report::pass(std::string name, std::string detail) {
  checks.push_back({std::move(name), CheckStatus::pass, std::move(detail)});
}

void Report::fail(std::string name, std::string detail) {
  checks.push_back({std::move(name), CheckStatus::fail, std::move(detail)});
}

void Report::skip(std::string name, std::string detail) {
  checks.push_back({std::move(name), CheckStatus::skipped, std::move(detail)});
}

bool Report::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.status == CheckStatus::fail; });
}

std::vector<const Check*> Report::failures() const {
  std::vector<const Check*> out;
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) out.push_back(&c);
  return out;
}

}  // namespace troplin
