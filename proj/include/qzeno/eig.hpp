#pragma once

#include <Eigen/Eigenvalues>

#include "qzeno/matrix.hpp"

namespace qzeno {

struct EigenSystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns, same order
};

inline EigenSystem hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericError("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qzeno
