#include <gtest/gtest.h>

#include "nuds/error.hpp"
#include "nuds/io.hpp"
#include "nuds/recovery.hpp"
#include "nuds/scenarios.hpp"

namespace nuds {
namespace {

TEST(ScenarioId, NamesRoundTrip) {
  const std::vector<std::string> names{"thm312_diagonal", "thm38_onb", "thm314_counterexample",
                                       "thm317_generalized", "thm319_quarter"};
  ASSERT_EQ(all_scenarios().size(), names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    EXPECT_EQ(to_string(all_scenarios()[k]), names[k]);
    EXPECT_EQ(parse_scenario_id(names[k]), all_scenarios()[k]);
  }
  EXPECT_FALSE(parse_scenario_id("thm999").has_value());
}

TEST(CounterexampleSource, PrintedCoordinates) {
  const Vec w = counterexample_source(3);
  const IndexMap map(12);
  EXPECT_EQ(w[map.index_of({0, 0})], Complex(1.0));
  EXPECT_EQ(w[map.index_of({-1, 0})], Complex(-0.5));
  EXPECT_EQ(w[map.index_of({-1, 1})], Complex(-1.0 / 3.0));
  EXPECT_EQ(w[map.index_of({1, 1})], Complex(1.0 / 9.0));
  EXPECT_EQ(w[map.index_of({0, 1})], Complex(1.0 / 3.0));
  EXPECT_EQ(w[map.index_of({1, 0})], Complex(0.5));
  EXPECT_EQ(w[map.index_of({-2, 0})], Complex(-0.25));
  EXPECT_EQ(w[map.index_of({-2, 1})], Complex(-1.0 / 9.0));
}

TEST(LogSpaced, DistinctInsideInterval) {
  const Vec v = log_spaced(12, 0.1, 0.9);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    EXPECT_GT(v[i].real(), 0.1);
    EXPECT_LT(v[i].real(), 0.9);
    if (i > 0) {
      EXPECT_GT(v[i].real(), v[i - 1].real());
    }
  }
}

TEST(Build, QuarterExample) {
  const Scenario sc = build(ScenarioId::QuarterContraction, SpectralParams(2, 1), 20);
  EXPECT_EQ(sc.spec.dim, 80);
  EXPECT_TRUE(sc.spec.A.isApprox(0.25 * Mat::Identity(80, 80)));
  ASSERT_EQ(sc.spec.W_basis.cols(), 2);
  const IndexMap map(80);
  EXPECT_EQ(sc.spec.W_basis(map.index_of({0, 0}), 0), Complex(1.0));
  EXPECT_EQ(sc.spec.W_basis(map.index_of({0, 1}), 1), Complex(1.0));
  EXPECT_EQ(sc.expect.expected_rho, 0.25);
  EXPECT_TRUE(sc.expect.should_recover_infinite);
}

TEST(Build, OnbExample) {
  const Scenario sc = build(ScenarioId::OnbLimit, SpectralParams(2, 1), 4);
  EXPECT_EQ(sc.expect.expected_norm_ratio, 1.0);
  const DataMatrix d = data_matrix(simulate(sc.spec), sc.spec.g);
  const double ratio =
      limit_operator(d, sc.spec.g.vectors(), 2).value.norm() / sup_row_norm(d);
  EXPECT_NEAR(ratio, 1.0, 1e-14);
}

TEST(Build, CounterexampleExample) {
  const Scenario sc = build(ScenarioId::VandermondeCounterexample, SpectralParams(2, 1), 3);
  EXPECT_FALSE(sc.expect.should_recover_finite);
  const DataMatrix d = data_matrix(simulate(sc.spec), sc.spec.g);
  ASSERT_EQ(d.rows(), 12);
  EXPECT_LE(d.values().cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Build, DiagonalExample) {
  const Scenario sc = build(ScenarioId::DiagonalFinite, SpectralParams(2, 1), 4);
  const IndexMap map(16);
  const Mat& A = sc.spec.A;
  EXPECT_EQ(A(map.index_of({0, 0}), map.index_of({0, 0})), Complex(1.0));
  EXPECT_EQ(A(map.index_of({2, 0}), map.index_of({2, 0})), Complex(0.25));
  EXPECT_EQ(A(map.index_of({-2, 0}), map.index_of({-2, 0})), Complex(0.25));
  EXPECT_EQ(A(map.index_of({1, 1}), map.index_of({1, 1})), Complex(0.0));
  EXPECT_EQ(sc.spec.x0[map.index_of({0, 1})], Complex(1.0));
  EXPECT_EQ(sc.spec.xm2[map.index_of({-1, 0})], Complex(1.0));
  EXPECT_EQ(sc.spec.x0.norm(), 1.0);
}

TEST(Build, GeneralizedIsTaggedCorrected) {
  const Scenario sc = build(ScenarioId::GeneralizedCorrected, SpectralParams(2, 1), 4);
  EXPECT_NE(std::find(sc.expect.notes.begin(), sc.expect.notes.end(), "paper-typo-corrected"),
            sc.expect.notes.end());
  EXPECT_NEAR(spectral_radius(sc.spec.A), 2.0, 1e-12);
  ASSERT_TRUE(sc.stationary.has_value());
  // S(w) = -w, so x0 = x_{-2} = -w is a stationary start.
  EXPECT_EQ(sc.spec.x0, -sc.spec.w);
}

TEST(Build, DeterministicJson) {
  for (const ScenarioId id : all_scenarios()) {
    for (const std::int64_t K : {1, 3}) {
      const std::string a = serialize_config(config_from_scenario(build(id, SpectralParams(2, 3), K)));
      const std::string b = serialize_config(config_from_scenario(build(id, SpectralParams(2, 3), K)));
      EXPECT_EQ(a, b) << to_string(id);
    }
  }
}

TEST(Build, RejectsBadK) {
  EXPECT_THROW(build(ScenarioId::OnbLimit, SpectralParams(2, 1), 0), ConfigError);
}

}  // namespace
}  // namespace nuds
