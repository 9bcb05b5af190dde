#pragma once

// Dense complex linear algebra shared by every module. Storage is Eigen's
// dynamic complex matrix; the functions below add the checks and error
// reporting the rest of the library relies on.

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace nuds {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;

// Numerical thresholds. One instance is threaded through the library; the
// CLI overrides entries from --tol-override KEY=VAL.
struct Tolerances {
  double eig = 1e-8;          // eigen-decomposition reconstruction residual
  double solve = 1e-8;        // linear solve backward error
  double herm = 1e-10;        // relative ||M - M*|| accepted as Hermitian
  double pivot = 1e-12;       // relative pivot magnitude treated as singular
  double frame = 1e-10;       // alpha above this is a frame
  double dual = 1e-8;         // verify_dual_pair residual accepted as dual
  double bs = 1e-6;           // Cauchy tail gap accepted as convergent rows
  double rho_margin = 1e-6;   // rho(A) < 1 - rho_margin required
  double in_subspace = 1e-10; // ||(I - P_W) w|| accepted as w in W
  double residual = 1e-7;     // data-consistency residual accepted by recovery

  // Sets one field by name; throws ConfigError for unknown keys.
  void set(const std::string& key, double value);
};

const Tolerances& default_tolerances();

// Throws ConfigError when any entry is NaN or infinite.
void require_finite(const Mat& m, const std::string& what);

// sum_k u_k * conj(v_k)
Complex inner(const Vec& u, const Vec& v);

// All eigenvalues of a Hermitian matrix in ascending order.
RealVec hermitian_eigs(const Mat& m, const Tolerances& tol = default_tolerances());

// Eigenvector for the largest eigenvalue of a Hermitian matrix.
Vec top_eigenvector(const Mat& m, const Tolerances& tol = default_tolerances());

// LU with partial pivoting. Throws SingularMatrixError naming the first
// pivot whose magnitude falls below tol.pivot times the largest entry.
Vec solve(const Mat& m, const Vec& b, const Tolerances& tol = default_tolerances());
Mat solve(const Mat& m, const Mat& b, const Tolerances& tol = default_tolerances());

// Largest eigenvalue modulus via a complex Schur decomposition.
double spectral_radius(const Mat& a);

// Orthonormal basis of the column span (rank-revealing SVD). Throws
// ConfigError when every column is zero.
Mat orthonormal_basis(const Mat& columns);

// Largest singular value.
double operator_norm(const Mat& a);

Mat matrix_power(const Mat& a, long long n);

}  // namespace nuds
