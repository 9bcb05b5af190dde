#pragma once

// Deterministic builders for the worked examples and the counterexample.
// Every scenario lives on H = C^{4K} with coordinates indexed by window(K).

#include <optional>
#include <string>
#include <vector>

#include "nuds/dynamics.hpp"
#include "nuds/frames.hpp"

namespace nuds {

enum class ScenarioId {
  DiagonalFinite,            // "thm312_diagonal"
  OnbLimit,                  // "thm38_onb"
  VandermondeCounterexample, // "thm314_counterexample"
  GeneralizedCorrected,      // "thm317_generalized"
  QuarterContraction,        // "thm319_quarter"
};

std::string to_string(ScenarioId id);
std::optional<ScenarioId> parse_scenario_id(const std::string& name);
const std::vector<ScenarioId>& all_scenarios();

struct Expectations {
  bool should_recover_finite = false;
  bool should_recover_infinite = false;
  std::optional<FrameBounds> expected_bounds;
  std::optional<double> expected_rho;
  std::optional<double> expected_norm_ratio;
  std::vector<std::string> notes;
};

struct Scenario {
  ScenarioId id = ScenarioId::DiagonalFinite;
  SystemSpec spec;
  Expectations expect;
  // Stationary map on W-coordinates when it is prescribed rather than
  // derived from A (the generalized scenario).
  std::optional<Mat> stationary;
};

// Throws ConfigError for K < 1.
Scenario build(ScenarioId id, const SpectralParams& params, std::int64_t K);

// Source vector (..., -1/4, -1/9, -1/2, -1/3, 1, 1/3, 1/2, 1/9, ...) on window(K):
//   (m, 0): 1 at m = 0, 2^{-m} for m > 0, -2^{-|m|} for m < 0
//   (m, 1): 3^{-(m+1)} for m >= 0, -3^{-|m|} for m < 0
Vec counterexample_source(std::int64_t K);

// Distinct diagonal entries log-spaced strictly inside (lo, hi).
Vec log_spaced(Eigen::Index count, double lo, double hi);

}  // namespace nuds
