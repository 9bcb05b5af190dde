#include "nuds/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuds/error.hpp"

namespace nuds {

void Tolerances::set(const std::string& key, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ConfigError("tolerance " + key + " must be a finite nonnegative number");
  }
  if (key == "eig") eig = value;
  else if (key == "solve") solve = value;
  else if (key == "herm") herm = value;
  else if (key == "pivot") pivot = value;
  else if (key == "frame") frame = value;
  else if (key == "dual") dual = value;
  else if (key == "bs") bs = value;
  else if (key == "rho_margin") rho_margin = value;
  else if (key == "in_subspace") in_subspace = value;
  else if (key == "residual") residual = value;
  else throw ConfigError("unknown tolerance key: " + key);
}

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

void require_finite(const Mat& m, const std::string& what) {
  if (!m.allFinite()) throw ConfigError(what + " contains NaN or infinite entries");
}

Complex inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size()) {
    throw DimensionError("inner product of vectors of length " + std::to_string(u.size()) +
                         " and " + std::to_string(v.size()));
  }
  Complex s{0.0, 0.0};
  for (Eigen::Index k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
  return s;
}

namespace {

void require_hermitian(const Mat& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw DimensionError("Hermitian eigenproblem needs a square matrix");
  const double scale = std::max(1.0, m.norm());
  if ((m - m.adjoint()).norm() > tol.herm * scale) {
    throw NumericalError("matrix is not Hermitian within tolerance");
  }
}

}  // namespace

RealVec hermitian_eigs(const Mat& m, const Tolerances& tol) {
  require_hermitian(m, tol);
  if (m.size() == 0) return RealVec{};
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  const Mat rebuilt = es.eigenvectors() * es.eigenvalues().asDiagonal() *
                      es.eigenvectors().adjoint();
  if ((rebuilt - m).norm() > tol.eig * std::max(1.0, m.norm())) {
    throw NumericalError("Hermitian eigen-decomposition failed its reconstruction check");
  }
  return es.eigenvalues();  // ascending
}

Vec top_eigenvector(const Mat& m, const Tolerances& tol) {
  require_hermitian(m, tol);
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  return es.eigenvectors().col(m.cols() - 1);
}

namespace {

Eigen::PartialPivLU<Mat> checked_lu(const Mat& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw DimensionError("solve needs a square matrix");
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw SingularMatrixError(0, 0.0);
  Eigen::PartialPivLU<Mat> lu(m);
  const Mat& packed = lu.matrixLU();
  for (Eigen::Index k = 0; k < packed.rows(); ++k) {
    const double p = std::abs(packed(k, k));
    if (p < tol.pivot * scale) throw SingularMatrixError(static_cast<std::size_t>(k), p);
  }
  return lu;
}

}  // namespace

Vec solve(const Mat& m, const Vec& b, const Tolerances& tol) {
  if (b.size() != m.rows()) throw DimensionError("right-hand side length mismatch");
  const auto lu = checked_lu(m, tol);
  Vec x = lu.solve(b);
  const double backward = (m * x - b).norm();
  if (backward > tol.solve * (m.norm() * x.norm() + b.norm())) {
    throw NumericalError("linear solve failed its backward-error check");
  }
  return x;
}

Mat solve(const Mat& m, const Mat& b, const Tolerances& tol) {
  if (b.rows() != m.rows()) throw DimensionError("right-hand side row count mismatch");
  const auto lu = checked_lu(m, tol);
  Mat x = lu.solve(b);
  const double backward = (m * x - b).norm();
  if (backward > tol.solve * (m.norm() * x.norm() + b.norm())) {
    throw NumericalError("linear solve failed its backward-error check");
  }
  return x;
}

double spectral_radius(const Mat& a) {
  if (a.rows() != a.cols()) throw DimensionError("spectral radius needs a square matrix");
  if (a.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Mat> es;
  es.compute(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("complex Schur iteration did not converge",
                           static_cast<int>(es.getMaxIterations() * a.rows()));
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Mat orthonormal_basis(const Mat& columns) {
  if (columns.size() == 0 || columns.cwiseAbs().maxCoeff() == 0.0) {
    throw ConfigError("orthonormal basis of the zero subspace requested");
  }
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const RealVec& s = svd.singularValues();
  const double cutoff = s[0] * std::max(columns.rows(), columns.cols()) *
                        std::numeric_limits<double>::epsilon() * 16.0;
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

double operator_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()[0];
}

Mat matrix_power(const Mat& a, long long n) {
  if (a.rows() != a.cols()) throw DimensionError("matrix power needs a square matrix");
  Mat result = Mat::Identity(a.rows(), a.cols());
  Mat base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace nuds
