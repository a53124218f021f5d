#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "coxkl/budgets.hpp"

namespace coxkl {

// One assertion inside an acceptance suite. Quantified assertions (over a
// group, a family, a table) aggregate into a single check whose detail names
// the first violation.
struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // short failure note, empty when passing
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;
  double seconds = 0.0;
  bool passed() const;
  int failed_count() const;
};

// Acceptance suite names in report order, one per acceptance criterion.
const std::vector<std::string>& suite_names();

// Runs one suite by name; throws std::invalid_argument for unknown names.
// Budgets bound the underlying engines. Suites with a documented wall-clock
// target append a runtime check against it.
SuiteResult run_suite(const std::string& name, const Budgets& budgets = Budgets{});

// {suite, pass, seconds, checks: [{name, pass, detail?}]}
nlohmann::json suite_result_json(const SuiteResult& r);

}  // namespace coxkl
