#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ndpo/cli/config.hpp"

namespace ndpo::cli {

struct CheckResult {
  std::string name;
  std::string description;
  double tolerance = 0.0;
  double achieved = 0.0;  // worst deviation observed
  bool passed = false;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string text() const;
  nlohmann::json to_json() const;
};

// fast: closed forms, moments engine and tables against each other.
// full: adds the quadrature oracle and a seeded Monte Carlo gate.
// Table II limits are taken from config.table2_limits.
VerifyReport cmd_verify(const RunConfig& config);

}  // namespace ndpo::cli
