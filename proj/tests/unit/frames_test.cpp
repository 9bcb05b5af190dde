#include <gtest/gtest.h>

#include "nuds/error.hpp"
#include "nuds/frames.hpp"
#include "oracles.hpp"

namespace nuds {
namespace {

Vec e(Eigen::Index d, Eigen::Index k, Complex scale = 1.0) {
  Vec v = Vec::Zero(d);
  v[k] = scale;
  return v;
}

// {e1, e1, e2} in C^2, a small redundant frame.
VectorFamily redundant() { return VectorFamily({e(2, 0), e(2, 0), e(2, 1)}); }

TEST(FrameOperator, BasicCases) {
  EXPECT_TRUE(frame_operator(VectorFamily::standard_basis(3)).isApprox(Mat::Identity(3, 3)));
  Mat want = Mat::Zero(2, 2);
  want(0, 0) = 2.0;
  want(1, 1) = 1.0;
  EXPECT_TRUE(frame_operator(redundant()).isApprox(want));
  EXPECT_EQ(frame_operator(VectorFamily({Vec::Zero(3)})).norm(), 0.0);
}

TEST(FrameBounds, BasicCases) {
  const FrameBounds onb = frame_bounds(VectorFamily::standard_basis(5));
  EXPECT_NEAR(onb.alpha, 1.0, 1e-14);
  EXPECT_NEAR(onb.beta, 1.0, 1e-14);
  const FrameBounds red = frame_bounds(redundant());
  EXPECT_NEAR(red.alpha, 1.0, 1e-14);
  EXPECT_NEAR(red.beta, 2.0, 1e-14);
  const FrameBounds def = frame_bounds(VectorFamily({e(2, 0)}));
  EXPECT_NEAR(def.alpha, 0.0, 1e-14);
  EXPECT_NEAR(def.beta, 1.0, 1e-14);
  EXPECT_FALSE(def.is_frame());
}

TEST(CanonicalDual, BasicCases) {
  const DualFamily onb = canonical_dual(VectorFamily::standard_basis(3));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(onb.vectors[k].isApprox(e(3, k)));

  const DualFamily red = canonical_dual(redundant());
  EXPECT_TRUE(red.vectors[0].isApprox(e(2, 0, 0.5)));
  EXPECT_TRUE(red.vectors[1].isApprox(e(2, 0, 0.5)));
  EXPECT_TRUE(red.vectors[2].isApprox(e(2, 1)));

  const DualFamily scaled = canonical_dual(VectorFamily({e(2, 0, 2.0), e(2, 1)}));
  EXPECT_TRUE(scaled.vectors[0].isApprox(e(2, 0, 0.5)));
  EXPECT_TRUE(scaled.vectors[1].isApprox(e(2, 1)));
}

TEST(CanonicalDual, NotAFrameCarriesAlpha) {
  try {
    canonical_dual(VectorFamily({e(2, 0)}));
    FAIL() << "expected NotAFrameError";
  } catch (const NotAFrameError& err) {
    EXPECT_NEAR(err.alpha(), 0.0, 1e-14);
  }
}

TEST(Analysis, BasicCases) {
  const VectorFamily onb = VectorFamily::standard_basis(3);
  EXPECT_TRUE(analysis(e(3, 1), onb).isApprox(e(3, 1)));
  EXPECT_EQ(analysis(Vec::Zero(3), onb).norm(), 0.0);
  Vec ones = Vec::Ones(2);
  EXPECT_TRUE(analysis(ones, redundant()).isApprox(Vec::Ones(3)));
  EXPECT_THROW(analysis(Vec::Zero(4), onb), DimensionError);
}

TEST(Synthesis, BasicCases) {
  const VectorFamily onb = VectorFamily::standard_basis(3);
  EXPECT_TRUE(synthesis(e(3, 2), onb).isApprox(e(3, 2)));
  Vec want(2);
  want << 2.0, 1.0;
  EXPECT_TRUE(synthesis(Vec::Ones(3), redundant()).isApprox(want));
  EXPECT_THROW(synthesis(Vec::Ones(2), redundant()), DimensionError);

  testing::Gen gen(4);
  const VectorFamily f(gen.frame(4, 7, 0.1));
  const Vec x = gen.vec(4);
  const DualFamily g = canonical_dual(f);
  EXPECT_LE((synthesis(analysis(x, g.vectors), f) - x).norm(), 1e-10 * x.norm());
}

TEST(VerifyDualPair, BasicCases) {
  const VectorFamily onb = VectorFamily::standard_basis(4);
  EXPECT_LE(verify_dual_pair(onb, DualFamily{onb.vectors()}, 20), 1e-12);

  testing::Gen gen(9);
  const VectorFamily f(gen.frame(5, 9, 0.1));
  EXPECT_LE(verify_dual_pair(f, canonical_dual(f), 20), 1e-8);

  std::vector<Vec> doubled;
  for (const Vec& v : onb.vectors()) doubled.push_back(2.0 * v);
  EXPECT_NEAR(verify_dual_pair(onb, DualFamily{doubled}, 20), 1.0, 1e-12);
}

TEST(MinNormGap, BasicCases) {
  const VectorFamily red = redundant();
  const Vec f = e(2, 0);
  Vec c(3);
  c << 1.0, 0.0, 0.0;
  EXPECT_NEAR(min_norm_gap(f, red, c), 0.5, 1e-14);

  Vec canonical(3);
  canonical << 0.5, 0.5, 0.0;
  EXPECT_NEAR(min_norm_gap(f, red, canonical), 0.0, 1e-14);

  Vec bad(3);
  bad << 1.0, 1.0, 0.0;
  EXPECT_THROW(min_norm_gap(f, red, bad), ConfigError);
}

TEST(SubspaceFrameBounds, BasicCases) {
  const Mat w0 = e(4, 0);
  const FrameBounds onb = subspace_frame_bounds(VectorFamily::standard_basis(4), w0);
  EXPECT_NEAR(onb.alpha, 1.0, 1e-14);
  EXPECT_NEAR(onb.beta, 1.0, 1e-14);

  const Vec sum = e(2, 0) + e(2, 1);
  const VectorFamily one({sum});
  const FrameBounds in_w = subspace_frame_bounds(one, e(2, 0));
  EXPECT_NEAR(in_w.alpha, 1.0, 1e-14);
  EXPECT_NEAR(in_w.beta, 1.0, 1e-14);
  EXPECT_FALSE(frame_bounds(one).is_frame());

  const FrameBounds orth = subspace_frame_bounds(VectorFamily({e(3, 1), e(3, 2)}), e(3, 0));
  EXPECT_NEAR(orth.alpha, 0.0, 1e-14);
  EXPECT_NEAR(orth.beta, 0.0, 1e-14);
}

TEST(VectorFamily, Validation) {
  EXPECT_THROW(VectorFamily(std::vector<Vec>{}), ConfigError);
  EXPECT_THROW(VectorFamily({Vec::Zero(2), Vec::Zero(3)}), DimensionError);
  Vec bad = Vec::Zero(2);
  bad[0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(VectorFamily({bad}), ConfigError);
}

TEST(FamilyJson, RoundTrip) {
  testing::Gen gen(21);
  const VectorFamily f(gen.frame(3, 5, 0.1));
  const VectorFamily back = family_from_json(family_to_json(f));
  ASSERT_EQ(back.size(), f.size());
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(back[k], f[k]);
}

TEST(FamilyJson, ParsesDocument) {
  const VectorFamily f =
      family_from_json(R"({"dim": 2, "vectors": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]})");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[1][1], Complex(0.0, 1.0));
  EXPECT_THROW(family_from_json(R"({"dim": 3, "vectors": [[[1, 0], [0, 0]]]})"), ConfigError);
  EXPECT_THROW(family_from_json("not json"), ConfigError);
}

}  // namespace
}  // namespace nuds
