#pragma once

// Simulation of the non-uniform discrete dynamical system
//
//   x_{lambda + r/N}     = A x_lambda + w,  lambda in 2Z
//   x_{lambda + 2 - r/N} = A x_lambda + w,  lambda in 2Z^+ + r/N or r/N
//   x_{lambda - 2 - r/N} = A x_lambda + w,  lambda in 2Z^- + r/N
//
// over the window [2K], the time-space data matrix D[lambda][j] = <x_lambda, g_j>
// and the row-norm diagnostics of the operator spaces the data lives in.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "nuds/frames.hpp"
#include "nuds/lambda_index.hpp"
#include "nuds/numerics.hpp"

namespace nuds {

struct SystemSpec {
  SpectralParams params{1, 1};
  Eigen::Index dim = 0;
  Mat A;
  VectorFamily g;
  Mat W_basis;  // orthonormal columns spanning W
  Vec w;
  Vec x0;
  Vec xm2;
  std::int64_t K = 1;

  // Shapes, finiteness, orthonormality of W_basis and w in W.
  // Throws ConfigError / DimensionError.
  void validate(const Tolerances& tol = default_tolerances()) const;

  // Same system with different initial states and source.
  SystemSpec with_states(const Vec& x0_new, const Vec& xm2_new, const Vec& w_new) const;
};

// Orthogonal projection onto the span of orthonormal columns.
Mat projector(const Mat& w_basis);

struct StateTrajectory {
  std::map<LambdaIndex, Vec> states;

  const Vec& at(LambdaIndex idx) const;
  bool contains(LambdaIndex idx) const { return states.count(idx) != 0; }
  std::size_t size() const { return states.size(); }
};

StateTrajectory simulate(const SystemSpec& spec);

// Largest ||x_{next(lambda)} - A x_lambda - w|| over the window.
double recurrence_residual(const StateTrajectory& traj, const Mat& A, const Vec& w);

// A^n x_init + (I + A + ... + A^{n-1}) w with n = power_of(idx).
Vec closed_form_state(const SystemSpec& spec, LambdaIndex idx);

// A^n x_init + (I - A^n)(I - A)^{-1} w. Throws ConditionError("1 in sigma(A)")
// when I - A is singular.
Vec closed_form_resolvent_state(const SystemSpec& spec, LambdaIndex idx,
                                const Tolerances& tol = default_tolerances());

class DataMatrix {
 public:
  DataMatrix() = default;
  DataMatrix(std::vector<LambdaIndex> row_index, Mat values);

  const std::vector<LambdaIndex>& row_index() const { return row_index_; }
  const Mat& values() const { return values_; }
  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }

  bool has_row(LambdaIndex idx) const { return position_.count(idx) != 0; }
  // Throws ConfigError when the row is missing.
  Vec row(LambdaIndex idx) const;
  void set_row(LambdaIndex idx, const Vec& values);

 private:
  std::vector<LambdaIndex> row_index_;
  std::map<LambdaIndex, Eigen::Index> position_;
  Mat values_;
};

DataMatrix data_matrix(const StateTrajectory& traj, const VectorFamily& g);

// sup_lambda ||row_lambda||, the l2 -> l_infinity operator norm.
double sup_row_norm(const DataMatrix& d);

// sum_lambda ||row_lambda||, the norm on finitely many rows.
double finite_block_norm(const DataMatrix& d);

struct BsMembership {
  Vec limit_row;
  double tail_gap = 0.0;
  bool member = false;
};

// Rows converge as |lambda| -> infinity: the limit row is the mean of the two
// outermost rows and the gap is the largest distance between any two of the
// `tail` outermost rows at the negative end and the `tail` outermost rows at
// the positive end. Throws ConfigError when 2 * tail exceeds the row count.
BsMembership bs_membership(const DataMatrix& d, int tail,
                           const Tolerances& tol = default_tolerances());

struct DataFit {
  Vec x0;
  Vec xm2;
  Vec w;
  double residual = 0.0;  // Frobenius norm of D - D(x0, xm2, w)
};

// Recovers the (x0, x_{-2}, w) generating D through the canonical dual of
// spec.g. The template supplies A, g, W and the window. Throws NotAFrameError.
DataFit data_fit(const DataMatrix& d, const SystemSpec& spec_template,
                 const Tolerances& tol = default_tolerances());

// Contract for systems whose states come from arbitrary recursion maps:
// a stationary map S (W-coordinates -> H) and a trajectory supplier.
struct GeneralizedSystem {
  Mat W_basis;
  Mat stationary;  // dim x p, acts on W-coordinates
  std::function<StateTrajectory(const Vec& x0, const Vec& xm2, const Vec& w)> trajectory;
};

struct GeneralizedCheck {
  double stationarity_error = 0.0;  // property (i): start at S(w), stay there
  double edge_distance = 0.0;       // property (iii): ||x_lambda - S(w)|| at window edges
  bool stationary_ok = false;
  bool converges = false;
};

// Numerically validates properties (i) and (iii) for one source w in W and
// one pair of initial states.
GeneralizedCheck check_generalized(const GeneralizedSystem& sys, const Vec& w, const Vec& x0,
                                   const Vec& xm2,
                                   const Tolerances& tol = default_tolerances());

// The linear system as a generalized one with S = (I - A)^{-1} restricted to W.
GeneralizedSystem linear_generalized(const SystemSpec& spec,
                                     const Tolerances& tol = default_tolerances());

}  // namespace nuds
