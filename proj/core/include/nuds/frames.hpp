#pragma once

// Frame and Bessel analysis of finite vector families.
//
// For a family {f_k} in C^d the frame operator is
//   Theta f = sum_k <f, f_k> f_k,
// and its extreme eigenvalues are the optimal bounds in
//   alpha ||f||^2 <= sum_k |<f, f_k>|^2 <= beta ||f||^2.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nuds/lambda_index.hpp"
#include "nuds/numerics.hpp"

namespace nuds {

class VectorFamily {
 public:
  VectorFamily() = default;
  // All vectors must share one length; at least one vector is required.
  explicit VectorFamily(std::vector<Vec> vectors, std::vector<LambdaIndex> labels = {});

  // Columns of `columns` become the family.
  static VectorFamily from_columns(const Mat& columns);
  // Standard basis of C^dim.
  static VectorFamily standard_basis(Eigen::Index dim);

  std::size_t size() const { return vectors_.size(); }
  Eigen::Index dim() const { return vectors_.empty() ? 0 : vectors_.front().size(); }
  const Vec& operator[](std::size_t k) const { return vectors_[k]; }
  const std::vector<Vec>& vectors() const { return vectors_; }
  const std::vector<LambdaIndex>& labels() const { return labels_; }

  // d x J matrix with the vectors as columns.
  Mat as_columns() const;

 private:
  std::vector<Vec> vectors_;
  std::vector<LambdaIndex> labels_;
};

// A family aligned index-by-index with some source family and used for
// synthesis against it. Any dual is accepted; validity is checked by
// verify_dual_pair.
struct DualFamily {
  std::vector<Vec> vectors;

  std::size_t size() const { return vectors.size(); }
  VectorFamily as_family() const { return VectorFamily(vectors); }
};

struct FrameBounds {
  double alpha = 0.0;
  double beta = 0.0;

  bool is_frame(double frame_tol = default_tolerances().frame) const {
    return alpha > frame_tol;
  }
};

Mat frame_operator(const VectorFamily& f);

FrameBounds frame_bounds(const VectorFamily& f, const Tolerances& tol = default_tolerances());

// {Theta^{-1} f_k}. Throws NotAFrameError when alpha <= tol.frame.
DualFamily canonical_dual(const VectorFamily& f, const Tolerances& tol = default_tolerances());

// c_k = <f, f_k>
Vec analysis(const Vec& f, const VectorFamily& family);
Vec analysis(const Vec& f, const std::vector<Vec>& family);

// sum_k c_k f_k
Vec synthesis(const Vec& c, const VectorFamily& family);
Vec synthesis(const Vec& c, const std::vector<Vec>& family);

// max over `trials` random unit f of || f - sum_k <f, g_k> f_k ||.
double verify_dual_pair(const VectorFamily& f, const DualFamily& g, int trials,
                        std::uint64_t seed = 0x5eedULL);

// For coefficients c with synthesis(c, F) = f returns
//   sum |c_k|^2 - sum |<f, Theta^{-1} f_k>|^2,
// which is nonnegative and vanishes only at the canonical coefficients.
// Throws ConfigError when c does not represent f.
double min_norm_gap(const Vec& f, const VectorFamily& family, const Vec& c,
                    const Tolerances& tol = default_tolerances());

// Bounds of {P_W f_k} as a frame for W = span(W_basis), computed in
// W-coordinates from {B* f_k}.
FrameBounds subspace_frame_bounds(const VectorFamily& f, const Mat& w_basis,
                                  const Tolerances& tol = default_tolerances());

// Families as JSON: {"dim": d, "vectors": [[[re, im], ...], ...]}.
VectorFamily family_from_json(const std::string& text);
std::string family_to_json(const VectorFamily& f);

}  // namespace nuds
