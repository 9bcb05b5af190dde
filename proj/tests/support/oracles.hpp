#pragma once

// Generators and independent reference computations for the tests. Nothing
// here calls into the library's numerics; the oracles are written out by hand.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace nuds::testing {

using C = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  C complex() { return {normal(), normal()}; }

  CVec vec(Eigen::Index d) {
    CVec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = complex();
    return v;
  }
  CVec unit_vec(Eigen::Index d) {
    CVec v = vec(d);
    return v / v.norm();
  }
  CMat mat(Eigen::Index rows, Eigen::Index cols) {
    CMat m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) m.col(j) = vec(rows);
    return m;
  }
  // Haar-like unitary from Gram-Schmidt on a Gaussian matrix.
  CMat unitary(Eigen::Index d) {
    CMat q = mat(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index k = 0; k < j; ++k) q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
      q.col(j) /= q.col(j).norm();
    }
    return q;
  }
  // Random matrix rescaled to spectral norm `norm` (computed by power iteration
  // on M*M, independent of the library).
  CMat mat_with_norm(Eigen::Index d, double norm) {
    CMat m = mat(d, d);
    return m * (norm / spectral_norm(m));
  }
  // Normal matrix U diag(eigs) U* with eigenvalue moduli drawn in [lo, hi]
  // and the first one pinned to hi.
  CMat normal_matrix(Eigen::Index d, double lo, double hi) {
    const CMat u = unitary(d);
    CVec eig(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double mod = i == 0 ? hi : uniform(lo, hi);
      eig[i] = std::polar(mod, uniform(0.0, 2.0 * M_PI));
    }
    return u * eig.asDiagonal() * u.adjoint();
  }

  // J >= d vectors: a unitary's columns scaled by s in [sqrt(alpha_min), 1]
  // (so Theta >= s^2 I) plus J - d Gaussian extras, shuffled.
  std::vector<CVec> frame(Eigen::Index d, Eigen::Index J, double alpha_min) {
    const CMat u = unitary(d);
    const double s = uniform(std::sqrt(alpha_min), 1.0);
    std::vector<CVec> out;
    for (Eigen::Index k = 0; k < d; ++k) out.push_back(s * u.col(k));
    for (Eigen::Index k = d; k < J; ++k) out.push_back(vec(d) / std::sqrt(static_cast<double>(d)));
    std::shuffle(out.begin(), out.end(), rng_);
    return out;
  }

  static double spectral_norm(const CMat& m) {
    CVec v = CVec::Ones(m.cols()) / std::sqrt(static_cast<double>(m.cols()));
    double s = 0.0;
    for (int it = 0; it < 500; ++it) {
      CVec next = m.adjoint() * (m * v);
      const double n = next.norm();
      if (n == 0.0) return 0.0;
      v = next / n;
      s = std::sqrt(n);
    }
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Explicit inverse of a 3x3 matrix via the adjugate formula.
inline CMat adjugate_inverse3(const CMat& m) {
  auto a = [&m](int i, int j) { return m(i, j); };
  CMat cof(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      cof(i, j) = a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0);
    }
  }
  const C det = a(0, 0) * cof(0, 0) + a(0, 1) * cof(0, 1) + a(0, 2) * cof(0, 2);
  return cof.transpose() / det;
}

// Eigenvalues of a 2x2 Hermitian matrix from the characteristic polynomial.
inline std::pair<double, double> hermitian_eigs2(const CMat& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b2 = std::norm(m(0, 1));
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
  return {mean - rad, mean + rad};
}

// Frame bounds by brute force: extreme Rayleigh quotients of sum |<f, f_k>|^2
// over the coordinate directions and many random unit vectors. Gives an inner
// estimate: alpha_est >= alpha and beta_est <= beta.
inline std::pair<double, double> sampled_frame_bounds(const std::vector<CVec>& family, Gen& gen,
                                                      int samples) {
  const Eigen::Index d = family.front().size();
  double lo = 1e300, hi = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CVec f = gen.unit_vec(d);
    double sum = 0.0;
    for (const CVec& fk : family) sum += std::norm(f.dot(fk));
    lo = std::min(lo, sum);
    hi = std::max(hi, sum);
  }
  return {lo, hi};
}

}  // namespace nuds::testing
