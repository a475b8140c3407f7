#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace nlad {

struct CgReport {
  int iterations = 0;
  double residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients for SPD systems.  x holds the
// initial guess on entry and the solution on return.  Throws
// IndefiniteSystem when a search direction has nonpositive curvature and
// NonConvergence when the iteration cap is exhausted.  All reductions run in
// fixed order, so repeated solves are bitwise reproducible.
CgReport pcg_solve(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                   Eigen::VectorXd& x, double tol_abs, int max_iters);

// Direct LDL^T solve of a symmetric tridiagonal SPD system; sub holds the
// n-1 subdiagonal entries.  Throws IndefiniteSystem on a nonpositive pivot.
Eigen::VectorXd tridiagonal_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                                  const Eigen::VectorXd& rhs);

}  // namespace nlad
