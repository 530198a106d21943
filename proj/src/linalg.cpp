#include "kickmix/linalg.hpp"

#include <lapacke.h>

#include <string>

#include "kickmix/errors.hpp"

namespace kickmix::linalg {

Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd matrix) {
  const auto n = static_cast<lapack_int>(matrix.rows());
  if (matrix.cols() != matrix.rows()) {
    throw ConfigError("symmetric_eigenvalues: matrix is not square");
  }
  Eigen::VectorXd values(n);
  if (n == 0) return values;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, matrix.data(), n,
                                         values.data());
  if (info != 0) {
    throw NumericalError("dsyevd failed with info=" + std::to_string(info));
  }
  return values;
}

}  // namespace kickmix::linalg
