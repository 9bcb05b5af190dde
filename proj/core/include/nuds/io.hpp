#pragma once

// JSON configs and reports, CSV dumps. Complex numbers are [re, im] pairs;
// every JSON document carries "schema": 1.

#include <optional>
#include <string>

#include "nuds/dynamics.hpp"
#include "nuds/recovery.hpp"
#include "nuds/scenarios.hpp"

namespace nuds {

inline constexpr int kSchemaVersion = 1;

struct Config {
  SystemSpec spec;
  Tolerances tolerances;
  std::optional<Mat> stationary;  // prescribed S on W-coordinates
};

// Accepts generator shorthands ("scaled_identity", "diag", "onb", "full").
// Throws ConfigError naming the violated invariant.
Config parse_config(const std::string& text);

// Canonical form: every matrix and family written out explicitly.
std::string serialize_config(const Config& config);

Config config_from_scenario(const Scenario& scenario);

std::string report_to_json(const RecoveryReport& report);
RecoveryReport report_from_json(const std::string& text);

// Header "lambda,j,re,im", rows in window order.
std::string data_matrix_csv(const DataMatrix& d, const SpectralParams& params);

// Header "lambda,m,eps,re_0,im_0,...", one row per state in window order.
std::string trajectory_csv(const StateTrajectory& traj, const SpectralParams& params);

}  // namespace nuds
