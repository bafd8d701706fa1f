#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace msl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Input that violates the problem contracts (dimension mismatch, broken
/// invariants, unparsable config). Maps to CLI exit status 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure while computing (integration blow-up, missed eigenvalue,
/// non-convergent quadrature). Maps to CLI exit status 1.
struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Weyl-matrix evaluation too close to an eigenvalue.
struct NearPoleError : ComputationError {
  using ComputationError::ComputationError;
};

inline double hermitian_deviation(const Matrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Matrix& a, double tol = 1e-12) {
  return hermitian_deviation(a) <= tol;
}

inline Matrix hermitized(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

inline double frob(const Matrix& a) { return a.norm(); }

/// Spectral (2-)norm; matrices here are tiny, so the SVD cost is irrelevant.
inline double opnorm(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

/// Deterministic phase fix: scale each column so its largest-modulus entry is
/// real positive (first such entry on ties).
inline void normalize_column_phases(Matrix& u) {
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      double v = std::abs(u(i, j));
      if (v > best * (1.0 + 1e-12)) {
        best = v;
        imax = i;
      }
    }
    Complex pivot = u(imax, j);
    if (std::abs(pivot) > 0) u.col(j) *= std::abs(pivot) / pivot;
  }
}

/// Hermitian eigendecomposition with ascending eigenvalues and the phase
/// convention above. Returns (eigenvalues, eigenvectors as columns).
inline std::pair<RealVector, Matrix> eigh(const Matrix& a, double hermTol = 1e-9) {
  if (hermitian_deviation(a) > hermTol * (1.0 + a.cwiseAbs().maxCoeff()))
    throw ComputationError("eigh: matrix is not Hermitian within tolerance, deviation = " +
                           std::to_string(hermitian_deviation(a)));
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitized(a));
  if (es.info() != Eigen::Success) throw ComputationError("eigh: eigendecomposition failed");
  Matrix v = es.eigenvectors();
  normalize_column_phases(v);
  return {es.eigenvalues(), v};
}

}  // namespace msl
