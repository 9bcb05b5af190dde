#include "nuds/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "nuds/error.hpp"

namespace nuds {

namespace {

void require_length(const Vec& v, Eigen::Index dim, const char* what) {
  if (v.size() != dim) {
    throw DimensionError(std::string(what) + " has length " + std::to_string(v.size()) +
                         ", expected " + std::to_string(dim));
  }
}

}  // namespace

Mat projector(const Mat& w_basis) { return w_basis * w_basis.adjoint(); }

void SystemSpec::validate(const Tolerances& tol) const {
  if (dim < 1) throw ConfigError("dim must be positive");
  if (K < 1) throw ConfigError("K must be >= 1");
  if (A.rows() != dim || A.cols() != dim) throw DimensionError("A must be dim x dim");
  require_finite(A, "A");
  if (g.size() == 0) throw ConfigError("sampling family is empty");
  if (g.dim() != dim) throw DimensionError("sampling vectors must have length dim");
  if (W_basis.rows() != dim || W_basis.cols() < 1) {
    throw DimensionError("W basis must have dim rows and at least one column");
  }
  require_finite(W_basis, "W basis");
  const Mat gram = W_basis.adjoint() * W_basis;
  if ((gram - Mat::Identity(gram.rows(), gram.cols())).norm() > 1e-8) {
    throw ConfigError("W basis columns must be orthonormal");
  }
  require_length(w, dim, "w");
  require_length(x0, dim, "x0");
  require_length(xm2, dim, "xm2");
  require_finite(w, "w");
  require_finite(x0, "x0");
  require_finite(xm2, "xm2");
  const Vec outside = w - W_basis * (W_basis.adjoint() * w);
  if (outside.norm() > tol.in_subspace * std::max(1.0, w.norm())) {
    throw ConfigError("source w must lie in W (||(I - P_W) w|| = " +
                      std::to_string(outside.norm()) + ")");
  }
}

SystemSpec SystemSpec::with_states(const Vec& x0_new, const Vec& xm2_new,
                                   const Vec& w_new) const {
  SystemSpec out = *this;
  out.x0 = x0_new;
  out.xm2 = xm2_new;
  out.w = w_new;
  return out;
}

const Vec& StateTrajectory::at(LambdaIndex idx) const {
  const auto it = states.find(idx);
  if (it == states.end()) {
    throw ConfigError("state (" + std::to_string(idx.m) + "," + std::to_string(idx.eps) +
                      ") is outside the simulated window");
  }
  return it->second;
}

StateTrajectory simulate(const SystemSpec& spec) {
  StateTrajectory traj;
  for (const LambdaIndex start : {LambdaIndex{0, 0}, LambdaIndex{-1, 0}}) {
    Vec x = start.m >= 0 ? spec.x0 : spec.xm2;
    for (LambdaIndex idx = start; in_window(idx, spec.K); idx = successor(idx)) {
      traj.states.emplace(idx, x);
      x = spec.A * x + spec.w;
    }
  }
  return traj;
}

double recurrence_residual(const StateTrajectory& traj, const Mat& A, const Vec& w) {
  double worst = 0.0;
  for (const auto& [idx, x] : traj.states) {
    const auto next = traj.states.find(successor(idx));
    if (next == traj.states.end()) continue;
    worst = std::max(worst, (next->second - A * x - w).norm());
  }
  return worst;
}

Vec closed_form_state(const SystemSpec& spec, LambdaIndex idx) {
  const std::int64_t n = power_of(idx);
  const Vec& x_init = idx.m >= 0 ? spec.x0 : spec.xm2;
  const Eigen::Index d = spec.A.rows();
  Mat geometric = Mat::Zero(d, d);
  Mat power = Mat::Identity(d, d);
  for (std::int64_t k = 0; k < n; ++k) {
    geometric += power;
    power = power * spec.A;
  }
  return power * x_init + geometric * spec.w;
}

Vec closed_form_resolvent_state(const SystemSpec& spec, LambdaIndex idx, const Tolerances& tol) {
  const Eigen::Index d = spec.A.rows();
  const Mat identity = Mat::Identity(d, d);
  Vec stationary;
  try {
    stationary = solve(identity - spec.A, spec.w, tol);
  } catch (const SingularMatrixError&) {
    throw ConditionError("1 in sigma(A): I - A is not invertible");
  }
  const Vec& x_init = idx.m >= 0 ? spec.x0 : spec.xm2;
  const Mat power = matrix_power(spec.A, power_of(idx));
  return power * x_init + (identity - power) * stationary;
}

DataMatrix::DataMatrix(std::vector<LambdaIndex> row_index, Mat values)
    : row_index_(std::move(row_index)), values_(std::move(values)) {
  if (static_cast<Eigen::Index>(row_index_.size()) != values_.rows()) {
    throw DimensionError("data matrix row index does not match its value rows");
  }
  for (std::size_t p = 0; p < row_index_.size(); ++p) {
    if (!position_.emplace(row_index_[p], static_cast<Eigen::Index>(p)).second) {
      throw ConfigError("duplicate row in data matrix");
    }
  }
}

Vec DataMatrix::row(LambdaIndex idx) const {
  const auto it = position_.find(idx);
  if (it == position_.end()) {
    throw ConfigError("data matrix has no row (" + std::to_string(idx.m) + "," +
                      std::to_string(idx.eps) + ")");
  }
  return values_.row(it->second).transpose();
}

void DataMatrix::set_row(LambdaIndex idx, const Vec& values) {
  const auto it = position_.find(idx);
  if (it == position_.end()) throw ConfigError("data matrix has no such row");
  if (values.size() != values_.cols()) throw DimensionError("row length mismatch");
  values_.row(it->second) = values.transpose();
}

DataMatrix data_matrix(const StateTrajectory& traj, const VectorFamily& g) {
  std::vector<LambdaIndex> rows;
  Mat values(static_cast<Eigen::Index>(traj.size()), static_cast<Eigen::Index>(g.size()));
  Eigen::Index p = 0;
  for (const auto& [idx, x] : traj.states) {
    if (x.size() != g.dim()) throw DimensionError("state and sampling vector lengths differ");
    rows.push_back(idx);
    values.row(p++) = analysis(x, g).transpose();
  }
  return DataMatrix(std::move(rows), std::move(values));
}

double sup_row_norm(const DataMatrix& d) {
  if (d.rows() == 0) return 0.0;
  return d.values().rowwise().norm().maxCoeff();
}

double finite_block_norm(const DataMatrix& d) {
  if (d.rows() == 0) return 0.0;
  return d.values().rowwise().norm().sum();
}

BsMembership bs_membership(const DataMatrix& d, int tail, const Tolerances& tol) {
  if (tail < 1 || 2 * static_cast<Eigen::Index>(tail) > d.rows()) {
    throw ConfigError("window too small: need at least " + std::to_string(2 * tail) +
                      " rows for tail " + std::to_string(tail) + ", have " +
                      std::to_string(d.rows()));
  }
  const Mat& v = d.values();
  const Eigen::Index n = v.rows();
  std::vector<Eigen::Index> edge;
  for (Eigen::Index k = 0; k < tail; ++k) {
    edge.push_back(k);
    edge.push_back(n - 1 - k);
  }
  BsMembership out;
  for (std::size_t a = 0; a < edge.size(); ++a) {
    for (std::size_t b = a + 1; b < edge.size(); ++b) {
      out.tail_gap = std::max(out.tail_gap, (v.row(edge[a]) - v.row(edge[b])).norm());
    }
  }
  out.limit_row = (0.5 * (v.row(0) + v.row(n - 1))).transpose();
  out.member = out.tail_gap <= tol.bs;
  return out;
}

DataFit data_fit(const DataMatrix& d, const SystemSpec& spec_template, const Tolerances& tol) {
  const DualFamily dual = canonical_dual(spec_template.g, tol);
  DataFit fit;
  fit.x0 = synthesis(d.row({0, 0}), dual.vectors);
  fit.xm2 = synthesis(d.row({-1, 0}), dual.vectors);
  const Vec next = d.row({0, 1}) - analysis(spec_template.A * fit.x0, spec_template.g);
  fit.w = synthesis(next, dual.vectors);

  SystemSpec refit = spec_template.with_states(fit.x0, fit.xm2, fit.w);
  const StateTrajectory traj = simulate(refit);
  double sq = 0.0;
  for (const LambdaIndex idx : d.row_index()) {
    if (!traj.contains(idx)) throw ConfigError("data matrix row outside the template window");
    sq += (d.row(idx) - analysis(traj.at(idx), spec_template.g)).squaredNorm();
  }
  fit.residual = std::sqrt(sq);
  return fit;
}

GeneralizedCheck check_generalized(const GeneralizedSystem& sys, const Vec& w, const Vec& x0,
                                   const Vec& xm2, const Tolerances& tol) {
  const Vec stationary = sys.stationary * (sys.W_basis.adjoint() * w);
  const double scale = std::max(1.0, stationary.norm());
  GeneralizedCheck out;

  const StateTrajectory still = sys.trajectory(stationary, stationary, w);
  for (const auto& [idx, x] : still.states) {
    out.stationarity_error = std::max(out.stationarity_error, (x - stationary).norm());
  }
  out.stationary_ok = out.stationarity_error <= tol.bs * scale;

  const StateTrajectory moving = sys.trajectory(x0, xm2, w);
  if (moving.states.empty()) throw ConfigError("trajectory supplier returned no states");
  const Vec& first = moving.states.begin()->second;
  const Vec& last = moving.states.rbegin()->second;
  out.edge_distance = std::max((first - stationary).norm(), (last - stationary).norm());
  out.converges = out.edge_distance <= tol.bs * scale;
  return out;
}

GeneralizedSystem linear_generalized(const SystemSpec& spec, const Tolerances& tol) {
  const Eigen::Index d = spec.A.rows();
  GeneralizedSystem sys;
  sys.W_basis = spec.W_basis;
  try {
    sys.stationary = solve(Mat::Identity(d, d) - spec.A, spec.W_basis, tol);
  } catch (const SingularMatrixError&) {
    throw ConditionError("1 in sigma(A): I - A is not invertible");
  }
  sys.trajectory = [spec](const Vec& x0, const Vec& xm2, const Vec& w) {
    return simulate(spec.with_states(x0, xm2, w));
  };
  return sys;
}

}  // namespace nuds
