#pragma once

#include <Eigen/Dense>

namespace funcboost {

/// Solves A X = B for symmetric positive-definite A.  Fails loudly
/// (std::runtime_error naming `context`) when A is singular or its estimated
/// condition number exceeds 1e12.
Eigen::MatrixXd spd_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const char* context);

}  // namespace funcboost
