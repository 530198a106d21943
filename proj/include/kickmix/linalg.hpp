#pragma once

#include <Eigen/Dense>

namespace kickmix::linalg {

// All eigenvalues of a real symmetric matrix, ascending. The matrix is
// consumed (LAPACK works in place), so large maps can be moved in without a
// second copy.
Eigen::VectorXd symmetric_eigenvalues(Eigen::MatrixXd matrix);

}  // namespace kickmix::linalg
