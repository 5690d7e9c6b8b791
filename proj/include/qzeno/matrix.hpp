#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "qzeno/errors.hpp"

namespace qzeno {

typedef std::complex<double> Complex;
typedef Eigen::MatrixXcd ComplexMatrix;
typedef Eigen::VectorXcd StateVector;
typedef Eigen::VectorXd RealVector;

namespace tol {
// ‖M − M†‖ ≤ kHermitian·‖M‖
inline constexpr double kHermitian = 1e-10;
// ‖P² − P‖ and ‖P − P†‖
inline constexpr double kProjector = 1e-10;
// relative support defect ‖(I−P)ψ‖/‖ψ‖ allowed for "state lies in subspace"
inline constexpr double kSubspaceSupport = 1e-8;
// relative eigenvalue gap below which eigenvalues share a subspace
inline constexpr double kDegeneracyRel = 1e-9;
// per-step leakage above which a run is flagged
inline constexpr double kZenoLockingWarn = 0.1;
}  // namespace tol

inline double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

inline double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).norm();
}

inline bool is_hermitian(const ComplexMatrix& m,
                         double rel_tol = tol::kHermitian) {
  return hermiticity_defect(m) <= rel_tol * m.norm();
}

inline void require_square_finite(const ComplexMatrix& m, const char* who) {
  if (m.rows() != m.cols())
    throw InvalidMatrix(std::string(who) + ": matrix must be square, got " +
                        std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()));
  if (!m.allFinite())
    throw InvalidMatrix(std::string(who) + ": matrix has non-finite entries");
}

inline void require_hermitian(const ComplexMatrix& m, const char* who,
                              double rel_tol = tol::kHermitian) {
  require_square_finite(m, who);
  if (!is_hermitian(m, rel_tol))
    throw NotHermitian(std::string(who) +
                       ": matrix is not Hermitian within tolerance");
}

inline void require_projector(const ComplexMatrix& p, const char* who,
                              double abs_tol = tol::kProjector) {
  require_square_finite(p, who);
  if (hermiticity_defect(p) > abs_tol || (p * p - p).norm() > abs_tol)
    throw NotProjector(std::string(who) +
                       ": matrix is not an orthogonal projector");
}

}  // namespace qzeno
