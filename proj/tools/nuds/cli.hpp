#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nuds/recovery.hpp"
#include "nuds/scenarios.hpp"

namespace nuds::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNumerical = 1,
  kConfig = 2,
  kCondition = 3,
  kExpectation = 4,
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DemoOutcome {
  RecoveryReport report;
  std::vector<Check> checks;
  std::vector<Complex> measurements;  // counterexample only

  bool all_passed() const;
};

// Builds nothing; runs the recovery route matching the scenario and checks
// its expectations record.
DemoOutcome run_demo(const Scenario& scenario, const Tolerances& tol);

// Entry point shared by the binary and the integration tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nuds::cli
