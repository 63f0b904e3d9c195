#include "hysnet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hysnet/error.hpp"

namespace hysnet::linalg {

namespace {

Eigen::Index rank_from_singular_values(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double smax = s.maxCoeff();
  if (!(smax > 0.0)) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * smax) ++r;
  return r;
}

}  // namespace

Eigen::Index numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

Eigen::MatrixXd orthonormal_complement(const Eigen::MatrixXd& cols, double rel_tol) {
  const Eigen::Index n = cols.rows();
  if (cols.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeFullU);
  const Eigen::Index r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().rightCols(n - r);
}

Eigen::MatrixXd orthonormal_range(const Eigen::MatrixXd& cols, double rel_tol) {
  const Eigen::Index n = cols.rows();
  if (cols.cols() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeFullU);
  const Eigen::Index r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(n - r);
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& g, const Eigen::VectorXd& b, int max_iter) {
  const Eigen::Index n = g.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  if (n == 0) return x;
  if (max_iter <= 0) max_iter = static_cast<int>(3 * n + 30);
  const double tol = 1e-13 * std::max(1.0, g.norm() * b.norm());

  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  // Columns that made no progress when added (dependent on the passive set).
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);
  auto solve_passive = [&](Eigen::VectorXd& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd gp(g.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) gp.col(static_cast<Eigen::Index>(k)) = g.col(idx[k]);
    const Eigen::VectorXd sp = gp.completeOrthogonalDecomposition().solve(b);
    s.setZero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
  };

  Eigen::VectorXd w = g.transpose() * (b - g * x);
  for (int outer = 0; outer < max_iter; ++outer) {
    Eigen::Index jmax = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (!passive[uj] && !blocked[uj] && w(j) > wmax) {
        wmax = w(j);
        jmax = j;
      }
    }
    if (jmax < 0) return x;
    passive[static_cast<std::size_t>(jmax)] = true;

    Eigen::VectorXd s;
    solve_passive(s);
    if (s(jmax) <= 0.0) {
      passive[static_cast<std::size_t>(jmax)] = false;
      blocked[static_cast<std::size_t>(jmax)] = true;
      continue;
    }
    std::fill(blocked.begin(), blocked.end(), false);
    for (int inner = 0; inner <= n; ++inner) {
      solve_passive(s);
      bool all_positive = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) all_positive = false;
      if (all_positive) break;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0)
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
    x = s;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)]) x(j) = 0.0;
    w = g.transpose() * (b - g * x);
  }
  throw ConvergenceError("nnls: iteration cap reached", w.maxCoeff());
}

}  // namespace hysnet::linalg
