#include "nuds/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "nuds/error.hpp"

namespace nuds {

namespace {

constexpr int kDualTrials = 8;

void require_dual(const VectorFamily& g, const DualFamily& gdual, const Tolerances& tol) {
  const double residual = verify_dual_pair(g, gdual, kDualTrials);
  if (!(residual <= tol.dual)) {
    throw ConditionError("supplied family is not a dual of the sampling frame (residual " +
                         std::to_string(residual) + ")");
  }
}

Mat columns_of(const std::vector<Vec>& vs, Eigen::Index dim) {
  Mat out(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vs[k];
  return out;
}

}  // namespace

CouplingMatrix coupling_matrix(const Mat& A, const VectorFamily& g, const DualFamily& gdual,
                               const Tolerances& tol) {
  if (A.rows() != g.dim() || A.cols() != g.dim()) throw DimensionError("A does not act on g's space");
  require_dual(g, gdual, tol);
  const auto J = static_cast<Eigen::Index>(g.size());
  CouplingMatrix c{Mat(J, J)};
  const Mat adj = A.adjoint();
  for (Eigen::Index j = 0; j < J; ++j) {
    const Vec image = adj * g[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < J; ++i) {
      c.entries(i, j) = inner(image, gdual.vectors[static_cast<std::size_t>(i)]);
    }
    const Vec rebuilt = synthesis(c.entries.col(j), g);
    if ((rebuilt - image).norm() > 1e-8 * std::max(1.0, image.norm())) {
      throw NumericalError("coupling coefficients fail to expand A* g_" + std::to_string(j));
    }
  }
  return c;
}

FiniteReconstructor::FiniteReconstructor(Mat A, VectorFamily g, DualFamily gdual,
                                         const Tolerances& tol)
    : A_(std::move(A)), g_(std::move(g)), tol_(tol) {
  if (A_.rows() != g_.dim() || A_.cols() != g_.dim()) {
    throw DimensionError("A does not act on the sampling space");
  }
  bounds_ = frame_bounds(g_, tol_);
  if (!bounds_.is_frame(tol_.frame)) {
    throw NotAFrameError("sampling family is not a frame; not stably recoverable", bounds_.alpha);
  }
  require_dual(g_, gdual, tol_);
  g_cols_ = g_.as_columns();
  dual_cols_ = columns_of(gdual.vectors, g_.dim());
}

FiniteReconstructor FiniteReconstructor::with_canonical_dual(Mat A, VectorFamily g,
                                                             const Tolerances& tol) {
  const FrameBounds b = frame_bounds(g, tol);
  if (!b.is_frame(tol.frame)) {
    throw NotAFrameError("sampling family is not a frame; not stably recoverable", b.alpha);
  }
  DualFamily dual = canonical_dual(g, tol);
  return FiniteReconstructor(std::move(A), std::move(g), std::move(dual), tol);
}

FiniteRecovery FiniteReconstructor::recover(const DataMatrix& d, LambdaIndex at) const {
  if (d.cols() != g_cols_.cols()) throw DimensionError("data matrix has the wrong column count");
  const Vec now = d.row(at);
  const Vec next = d.row(successor(at));
  const Vec u = dual_cols_ * now;
  // (G* v)_j = <v, g_j>
  const Vec coeffs = next - g_cols_.adjoint() * (A_ * u);
  return FiniteRecovery{dual_cols_ * coeffs, branch_of(at)};
}

FiniteRecovery FiniteReconstructor::recover_coupled(const DataMatrix& d, LambdaIndex at) const {
  if (d.cols() != g_cols_.cols()) throw DimensionError("data matrix has the wrong column count");
  if (!coupling_) {
    DualFamily dual;
    for (Eigen::Index k = 0; k < dual_cols_.cols(); ++k) dual.vectors.emplace_back(dual_cols_.col(k));
    coupling_ = coupling_matrix(A_, g_, dual, tol_);
  }
  const Vec now = d.row(at);
  const Vec next = d.row(successor(at));
  // sum_i conj(c_ij) <x_lambda, g_i> is the j-th entry of C* now.
  const Vec coeffs = next - coupling_->entries.adjoint() * now;
  return FiniteRecovery{dual_cols_ * coeffs, branch_of(at)};
}

double FiniteReconstructor::consistency(const DataMatrix& d, LambdaIndex at) const {
  const Vec reference = recover(d, at).w_hat;
  double worst = 0.0;
  for (const LambdaIndex idx : d.row_index()) {
    if (!d.has_row(successor(idx))) continue;
    worst = std::max(worst, (recover(d, idx).w_hat - reference).norm());
  }
  return worst;
}

FiniteRecovery reconstruct_finite(const DataMatrix& d, LambdaIndex at, const Mat& A,
                                  const VectorFamily& g, const DualFamily& gdual,
                                  const Tolerances& tol) {
  return FiniteReconstructor(A, g, gdual, tol).recover(d, at);
}

Certificate recovery_certificate_full(const VectorFamily& g, const Tolerances& tol) {
  Certificate c;
  c.bounds = frame_bounds(g, tol);
  c.recoverable = c.bounds.is_frame(tol.frame);
  return c;
}

FrameBounds subspace_condition(const Mat& A, const VectorFamily& g, const Mat& w_basis,
                               const Tolerances& tol) {
  if (A.rows() != g.dim() || w_basis.rows() != g.dim()) {
    throw DimensionError("A, g and W live in different spaces");
  }
  const Eigen::Index d = A.rows();
  Mat images;
  try {
    images = solve(Mat::Identity(d, d) - A.adjoint(), g.as_columns(), tol);
  } catch (const SingularMatrixError&) {
    throw ConditionError("1 in sigma(A): I - A* is not invertible");
  }
  return frame_bounds(VectorFamily::from_columns(w_basis.adjoint() * images), tol);
}

StationaryMap StationaryMap::from_operator(const Mat& w_basis, const Mat& apply,
                                           const VectorFamily& g) {
  if (apply.rows() != g.dim() || apply.cols() != w_basis.cols() || w_basis.rows() != g.dim()) {
    throw DimensionError("stationary map shape does not match W and g");
  }
  StationaryMap s;
  s.W_basis = w_basis;
  s.apply = apply;
  s.adjoint_family = VectorFamily::from_columns(apply.adjoint() * g.as_columns());
  return s;
}

StationaryMap stationary_map_from_A(const Mat& A, const VectorFamily& g, const Mat& w_basis,
                                    const Tolerances& tol) {
  const double rho = spectral_radius(A);
  if (!(rho < 1.0 - tol.rho_margin)) {
    throw ConditionError("stationary map requires rho(A) < 1, got rho(A) = " +
                         std::to_string(rho));
  }
  const Eigen::Index d = A.rows();
  const Mat apply = solve(Mat::Identity(d, d) - A, w_basis, tol);
  return StationaryMap::from_operator(w_basis, apply, g);
}

LimitEstimate limit_operator(const DataMatrix& d, const std::vector<Vec>& family, int tail,
                             const Tolerances& tol) {
  if (static_cast<Eigen::Index>(family.size()) != d.cols()) {
    throw DimensionError("limit operator: family size does not match data columns");
  }
  const BsMembership m = bs_membership(d, tail, tol);
  if (!m.member) {
    throw ConditionError("data rows have not converged: tail gap " + std::to_string(m.tail_gap) +
                         " exceeds " + std::to_string(tol.bs));
  }
  LimitEstimate out;
  out.value = synthesis(m.limit_row, family);
  out.tail_gap = m.tail_gap;
  const FrameBounds b = frame_bounds(VectorFamily(family), tol);
  out.uncertainty = std::sqrt(b.beta) * m.tail_gap;
  return out;
}

std::vector<Vec> lifted_dual(const StationaryMap& smap, const Tolerances& tol) {
  const FrameBounds b = frame_bounds(smap.adjoint_family, tol);
  if (!b.is_frame(tol.frame)) {
    throw NotAFrameError("{S* g_j} is not a frame for W; not stably recoverable", b.alpha);
  }
  const DualFamily dual = canonical_dual(smap.adjoint_family, tol);
  std::vector<Vec> lifted;
  lifted.reserve(dual.size());
  for (const auto& v : dual.vectors) lifted.emplace_back(smap.W_basis * v);
  return lifted;
}

RecoveryReport reconstruct_infinite(const DataMatrix& d, const StationaryMap& smap, int tail,
                                    const Tolerances& tol) {
  const FrameBounds b = frame_bounds(smap.adjoint_family, tol);
  const std::vector<Vec> lifted = lifted_dual(smap, tol);
  const LimitEstimate limit = limit_operator(d, lifted, tail, tol);
  RecoveryReport report;
  report.w_hat = limit.value;
  report.residual = limit.uncertainty;
  report.diagnostics.alpha = b.alpha;
  report.diagnostics.beta = b.beta;
  report.diagnostics.tail_gap = limit.tail_gap;
  return report;
}

Nullifier counterexample_nullifier(const Mat& A, const Vec& w, std::int64_t K,
                                   const SpectralParams& params, const Tolerances& tol) {
  const IndexMap map(4 * K);
  const Eigen::Index dim = map.dim();
  if (A.rows() != dim || A.cols() != dim || w.size() != dim) {
    throw DimensionError("counterexample needs A and w on the 4K-dimensional window space");
  }
  if (!A.isDiagonal(0.0)) throw ConfigError("counterexample needs a diagonal A");
  if (w.norm() == 0.0) throw ConfigError("counterexample needs a nonzero source");

  Nullifier out;
  out.g = w - A * w;
  const Vec diag = A.diagonal();
  out.x0 = Vec::Zero(dim);
  out.xm2 = Vec::Zero(dim);

  const Eigen::Index half = 2 * K;
  for (const bool positive : {true, false}) {
    // Rows: the 2K window points on this orbit. Columns: the 2K coordinates
    // on this half of the window, on which the initial state is supported.
    const Eigen::Index col0 = positive ? half : 0;
    Mat M(half, half);
    Vec rhs(half);
    Eigen::Index row = 0;
    for (const LambdaIndex idx : map.indices()) {
      if ((idx.m >= 0) != positive) continue;
      const std::int64_t n = power_of(idx);
      for (Eigen::Index c = 0; c < half; ++c) {
        M(row, c) = std::pow(diag[col0 + c], static_cast<double>(n)) * std::conj(out.g[col0 + c]);
      }
      // <(I + A + ... + A^{n-1}) w, g>
      Vec partial = Vec::Zero(dim);
      Vec term = w;
      for (std::int64_t k = 0; k < n; ++k) {
        partial += term;
        term = A * term;
      }
      rhs[row] = -inner(partial, out.g);
      ++row;
    }
    Vec coeffs;
    try {
      coeffs = solve(M, rhs, tol);
    } catch (const SingularMatrixError& e) {
      const Complex det = M.partialPivLu().determinant();
      throw NumericalError(std::string("counterexample system is singular (determinant estimate ") +
                           std::to_string(std::abs(det)) + "): " + e.what());
    }
    (positive ? out.x0 : out.xm2).segment(col0, half) = coeffs;
  }

  SystemSpec spec;
  spec.params = params;
  spec.dim = dim;
  spec.A = A;
  spec.g = VectorFamily({out.g});
  spec.W_basis = w / w.norm();
  spec.w = w;
  spec.x0 = out.x0;
  spec.xm2 = out.xm2;
  spec.K = K;
  const StateTrajectory traj = simulate(spec);
  for (const LambdaIndex idx : map.indices()) {
    const Complex s = inner(traj.at(idx), out.g);
    out.measurements.push_back(s);
    out.max_abs_measurement = std::max(out.max_abs_measurement, std::abs(s));
  }
  return out;
}

}  // namespace nuds
