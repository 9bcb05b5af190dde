#pragma once

// Reconstruction of the source term w from time-space samples.
//
// Finitely many samples: with {g_j} a frame and {gd_j} a dual,
//   w = sum_j ( <x_next, g_j> - <A u, g_j> ) gd_j,   u = sum_k <x_lambda, g_k> gd_k,
// for any lambda whose successor is sampled. Expanding A* g_j in the frame,
//   A* g_j = sum_i c_ij g_i,  c_ij = <A* g_j, gd_i>,
// gives the same operator as
//   w = sum_j ( <x_next, g_j> - sum_i conj(c_ij) <x_lambda, g_i> ) gd_j.
//
// Infinitely many samples: rows of D converge to <S(w), g_j>, and w is the
// limit of sum_j D[lambda][j] gd_j where {gd_j} is dual to {S* g_j} on W.

#include <optional>
#include <string>
#include <vector>

#include "nuds/dynamics.hpp"
#include "nuds/frames.hpp"
#include "nuds/numerics.hpp"

namespace nuds {

// c(i, j) = <A* g_j, gd_i>
struct CouplingMatrix {
  Mat entries;
};

// Throws ConditionError when gdual fails verify_dual_pair.
CouplingMatrix coupling_matrix(const Mat& A, const VectorFamily& g, const DualFamily& gdual,
                               const Tolerances& tol = default_tolerances());

struct FiniteRecovery {
  Vec w_hat;
  Branch branch = Branch::EvenAny;
};

class FiniteReconstructor {
 public:
  // Throws NotAFrameError when g is not a frame and ConditionError when gdual
  // is not a dual of g.
  FiniteReconstructor(Mat A, VectorFamily g, DualFamily gdual,
                      const Tolerances& tol = default_tolerances());
  static FiniteReconstructor with_canonical_dual(Mat A, VectorFamily g,
                                                 const Tolerances& tol = default_tolerances());

  // Operator form: synthesize u, apply A, re-analyze.
  FiniteRecovery recover(const DataMatrix& d, LambdaIndex at) const;
  // Coupling-coefficient form; same result, O(J^2) setup.
  FiniteRecovery recover_coupled(const DataMatrix& d, LambdaIndex at) const;

  // Largest ||w_hat(lambda) - w_hat(at)|| over every sampled lambda whose
  // successor is sampled too.
  double consistency(const DataMatrix& d, LambdaIndex at) const;

  const FrameBounds& bounds() const { return bounds_; }
  const Mat& A() const { return A_; }

 private:
  Mat A_;
  VectorFamily g_;
  Mat g_cols_;
  Mat dual_cols_;
  FrameBounds bounds_;
  Tolerances tol_;
  mutable std::optional<CouplingMatrix> coupling_;
};

FiniteRecovery reconstruct_finite(const DataMatrix& d, LambdaIndex at, const Mat& A,
                                  const VectorFamily& g, const DualFamily& gdual,
                                  const Tolerances& tol = default_tolerances());

struct Certificate {
  FrameBounds bounds;
  bool recoverable = false;
};

// Recoverability of every w in H from finitely many samples: g must be a frame.
Certificate recovery_certificate_full(const VectorFamily& g,
                                      const Tolerances& tol = default_tolerances());

// Bounds of {P_W (I - A*)^{-1} g_j} as a frame for W. This is a necessary
// condition for finite-window recovery only. Throws ConditionError when
// 1 is an eigenvalue of A.
FrameBounds subspace_condition(const Mat& A, const VectorFamily& g, const Mat& w_basis,
                               const Tolerances& tol = default_tolerances());

struct StationaryMap {
  Mat W_basis;                  // dim x p, orthonormal
  Mat apply;                    // dim x p, S acting on W-coordinates
  VectorFamily adjoint_family;  // S* g_j in W-coordinates (length p)

  // adjoint_family[j] = apply^* g_j.
  static StationaryMap from_operator(const Mat& w_basis, const Mat& apply, const VectorFamily& g);
};

// S = (I - A)^{-1} on W. Throws ConditionError when rho(A) >= 1 - rho_margin.
StationaryMap stationary_map_from_A(const Mat& A, const VectorFamily& g, const Mat& w_basis,
                                    const Tolerances& tol = default_tolerances());

struct LimitEstimate {
  Vec value;
  double tail_gap = 0.0;
  double uncertainty = 0.0;  // sqrt(beta_G) * tail_gap
};

// lim_{|lambda| -> inf} sum_j D[lambda][j] G_j, read off the outermost rows.
// Throws ConditionError when the rows have not converged within tol.bs.
LimitEstimate limit_operator(const DataMatrix& d, const std::vector<Vec>& family, int tail,
                             const Tolerances& tol = default_tolerances());

struct RecoveryDiagnostics {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> rho;
  double tail_gap = 0.0;
  std::optional<std::string> case_tag;  // "i" | "ii" | "iii" for finite recovery
};

struct RecoveryReport {
  Vec w_hat;
  std::optional<double> abs_error;
  double residual = 0.0;
  RecoveryDiagnostics diagnostics;
};

// Dual {gd_j} of {S* g_j} on W, lifted to H through W_basis.
std::vector<Vec> lifted_dual(const StationaryMap& smap, const Tolerances& tol = default_tolerances());

// Throws ConditionError ("not stably recoverable") when {S* g_j} is not a
// frame for W, or when the data rows have not converged.
RecoveryReport reconstruct_infinite(const DataMatrix& d, const StationaryMap& smap, int tail,
                                    const Tolerances& tol = default_tolerances());

struct Nullifier {
  Vec x0;
  Vec xm2;
  Vec g;                          // (I - A) w
  std::vector<Complex> measurements;  // <x_lambda, g> over window(K), window order
  double max_abs_measurement = 0.0;
};

// For diagonal A with distinct entries, builds initial states x0 (supported
// on the nonnegative half of the window) and x_{-2} (negative half) for which
// every sample <x_lambda, g>, lambda in [2K], vanishes while the source is w.
// Coordinates are indexed by IndexMap(4K). Throws NumericalError when a
// Vandermonde-weighted system is singular.
Nullifier counterexample_nullifier(const Mat& A, const Vec& w, std::int64_t K,
                                   const SpectralParams& params,
                                   const Tolerances& tol = default_tolerances());

}  // namespace nuds
