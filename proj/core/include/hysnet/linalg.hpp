#pragma once

#include <Eigen/Dense>

namespace hysnet::linalg {

/// Number of singular values above rel_tol times the largest one.
Eigen::Index numerical_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

/// Orthonormal basis (as columns) of the orthogonal complement of the column
/// span of `cols` in R^rows.
Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& cols, double rel_tol = 1e-10);

/// Orthonormal basis (as columns) of the column span of `cols`.
Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& cols, double rel_tol = 1e-10);

/// Orthonormal basis (as columns) of the null space of `a`.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol = 1e-10);

/// Lawson-Hanson nonnegative least squares: argmin_{x >= 0} |g x - b|.
Eigen::VectorXd nnls(const Eigen::MatrixXd& g, const Eigen::VectorXd& b, int max_iter = 0);

}  // namespace hysnet::linalg
