#include <gtest/gtest.h>

#include <set>

#include "nuds/error.hpp"
#include "nuds/lambda_index.hpp"

namespace nuds {
namespace {

TEST(SpectralParams, AcceptsValidPairs) {
  EXPECT_NO_THROW(SpectralParams(2, 1));
  EXPECT_NO_THROW(SpectralParams(2, 3));
  EXPECT_NO_THROW(SpectralParams(1, 1));
  EXPECT_NO_THROW(SpectralParams(5, 7));
}

TEST(SpectralParams, NamesTheViolatedInvariant) {
  auto message = [](std::int64_t N, std::int64_t r) {
    try {
      SpectralParams p(N, r);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(2, 2).find("r must be odd"), std::string::npos);
  EXPECT_NE(message(3, 9).find("1 <= r <= 2N - 1"), std::string::npos);
  EXPECT_NE(message(3, 3).find("coprime"), std::string::npos);
  EXPECT_NE(message(0, 1).find("N must be"), std::string::npos);
  EXPECT_NE(message(2, -1).find("r must"), std::string::npos);
}

TEST(IndexValue, BasicCases) {
  EXPECT_EQ(index_value({0, 0}, SpectralParams(2, 1)), Rational::make(0, 1));
  EXPECT_EQ(index_value({0, 0}, SpectralParams(5, 3)), Rational::make(0, 1));
  EXPECT_EQ(index_value({0, 1}, SpectralParams(2, 1)), Rational::make(1, 2));
  EXPECT_EQ(index_value({-1, 1}, SpectralParams(2, 3)), Rational::make(-1, 2));
}

TEST(IndexValue, Labels) {
  const SpectralParams p(2, 1);
  EXPECT_EQ(label({0, 0}, p), "0");
  EXPECT_EQ(label({-1, 0}, p), "-2");
  EXPECT_EQ(label({0, 1}, p), "1/2");
  EXPECT_EQ(label({-1, 1}, p), "-2+1/2");
  EXPECT_EQ(label({1, 1}, p), "2+1/2");
}

TEST(Window, KOne) {
  const std::vector<LambdaIndex> want{{-1, 0}, {-1, 1}, {0, 0}, {0, 1}};
  EXPECT_EQ(window(1), want);
}

TEST(Window, KTwoEnds) {
  const auto w = window(2);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_EQ(w.front(), (LambdaIndex{-2, 0}));
  EXPECT_EQ(w.back(), (LambdaIndex{1, 1}));
}

TEST(Window, KThreeStrictlyIncreasing) {
  for (const SpectralParams p : {SpectralParams(2, 1), SpectralParams(2, 3), SpectralParams(7, 13)}) {
    const auto w = window(3);
    ASSERT_EQ(w.size(), 12u);
    for (std::size_t i = 1; i < w.size(); ++i) {
      EXPECT_LT(index_value(w[i - 1], p), index_value(w[i], p));
    }
  }
}

TEST(Window, RejectsZero) {
  EXPECT_THROW(window(0), ConfigError);
  EXPECT_THROW(window(-3), ConfigError);
}

TEST(Successor, BasicCases) {
  EXPECT_EQ(successor({0, 0}), (LambdaIndex{0, 1}));
  EXPECT_EQ(successor({0, 1}), (LambdaIndex{1, 0}));
  EXPECT_EQ(successor({-1, 1}), (LambdaIndex{-2, 0}));
  EXPECT_EQ(successor({-1, 0}), (LambdaIndex{-1, 1}));
}

TEST(Successor, ValuesFollowTheThreeBranches) {
  const SpectralParams p(3, 5);
  const Rational step = Rational::make(5, 3);
  for (const LambdaIndex idx : window(4)) {
    const Rational from = index_value(idx, p);
    const Rational to = index_value(successor(idx), p);
    const double delta = to.to_double() - from.to_double();
    switch (branch_of(idx)) {
      case Branch::EvenAny:
        EXPECT_NEAR(delta, step.to_double(), 1e-14);
        break;
      case Branch::PosOffset:
        EXPECT_NEAR(delta, 2.0 - step.to_double(), 1e-14);
        break;
      case Branch::NegOffset:
        EXPECT_NEAR(delta, -2.0 - step.to_double(), 1e-14);
        break;
    }
  }
}

TEST(Branch, Tags) {
  EXPECT_EQ(branch_of({-3, 0}), Branch::EvenAny);
  EXPECT_EQ(branch_of({0, 1}), Branch::PosOffset);
  EXPECT_EQ(branch_of({2, 1}), Branch::PosOffset);
  EXPECT_EQ(branch_of({-1, 1}), Branch::NegOffset);
  EXPECT_EQ(case_tag(Branch::EvenAny), "i");
  EXPECT_EQ(case_tag(Branch::PosOffset), "ii");
  EXPECT_EQ(case_tag(Branch::NegOffset), "iii");
}

TEST(PowerOf, BasicCases) {
  EXPECT_EQ(power_of({0, 0}), 0);
  EXPECT_EQ(power_of({0, 1}), 1);
  EXPECT_EQ(power_of({-2, 0}), 2);
  EXPECT_EQ(power_of({-1, 1}), 1);
  EXPECT_EQ(power_of({-1, 0}), 0);
  EXPECT_EQ(power_of({3, 1}), 7);
}

TEST(PowerOf, OrbitStarts) {
  EXPECT_EQ(orbit_start({5, 1}), (LambdaIndex{0, 0}));
  EXPECT_EQ(orbit_start({-5, 1}), (LambdaIndex{-1, 0}));
}

TEST(IndexMap, DimFour) {
  const IndexMap map(4);
  EXPECT_EQ(map.index_of({-1, 0}), 0);
  EXPECT_EQ(map.index_of({-1, 1}), 1);
  EXPECT_EQ(map.index_of({0, 0}), 2);
  EXPECT_EQ(map.index_of({0, 1}), 3);
}

TEST(IndexMap, DimEight) { EXPECT_EQ(IndexMap(8).index_of({0, 0}), 4); }

TEST(IndexMap, RoundTrip) {
  for (const std::int64_t dim : {4, 8, 12, 80}) {
    const IndexMap map(dim);
    for (std::int64_t p = 0; p < dim; ++p) EXPECT_EQ(map.index_of(map.lambda_of(p)), p);
  }
}

TEST(IndexMap, RejectsIncompatibleDims) {
  EXPECT_THROW(IndexMap(6), ConfigError);
  EXPECT_THROW(IndexMap(0), ConfigError);
  EXPECT_THROW(IndexMap(4).index_of({1, 0}), ConfigError);
  EXPECT_THROW(IndexMap(4).lambda_of(4), ConfigError);
}

TEST(Rational, Reduces) {
  EXPECT_EQ(Rational::make(6, -4), (Rational{-3, 2}));
  EXPECT_EQ(to_string(Rational::make(4, 2)), "2");
  EXPECT_EQ(to_string(Rational::make(-1, 2)), "-1/2");
}

}  // namespace
}  // namespace nuds
