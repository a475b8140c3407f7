#include "nlad/linear_solver.hpp"

#include <cmath>

#include "nlad/errors.hpp"

namespace nlad {

CgReport pcg_solve(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
                   Eigen::VectorXd& x, double tol_abs, int max_iters) {
  const Eigen::Index n = b.size();
  Eigen::VectorXd inv_diag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a.coeff(i, i);
    if (!(d > 0.0)) throw IndefiniteSystem("nonpositive diagonal entry in CG matrix");
    inv_diag[i] = 1.0 / d;
  }

  Eigen::VectorXd r = b - a * x;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  double rnorm = r.norm();

  CgReport report;
  report.residual = rnorm;
  if (rnorm <= tol_abs) return report;

  Eigen::VectorXd ap(n);
  for (int it = 0; it < max_iters; ++it) {
    ap.noalias() = a * p;
    const double curvature = p.dot(ap);
    if (curvature <= 0.0) {
      throw IndefiniteSystem("nonpositive curvature in CG (p'Ap = " +
                             std::to_string(curvature) + ")");
    }
    const double alpha = rz / curvature;
    x += alpha * p;
    r -= alpha * ap;
    rnorm = r.norm();
    report.iterations = it + 1;
    report.residual = rnorm;
    if (rnorm <= tol_abs) return report;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw NonConvergence("pcg_solve", report.iterations, report.residual);
}

Eigen::VectorXd tridiagonal_solve(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                                  const Eigen::VectorXd& rhs) {
  const Eigen::Index n = diag.size();
  Eigen::VectorXd d(n);
  Eigen::VectorXd l(n > 0 ? n - 1 : 0);
  // LDL^T factorization.
  d[0] = diag[0];
  if (!(d[0] > 0.0)) throw IndefiniteSystem("nonpositive pivot in tridiagonal solve");
  for (Eigen::Index i = 1; i < n; ++i) {
    l[i - 1] = sub[i - 1] / d[i - 1];
    d[i] = diag[i] - l[i - 1] * sub[i - 1];
    if (!(d[i] > 0.0)) throw IndefiniteSystem("nonpositive pivot in tridiagonal solve");
  }
  // Forward substitution, diagonal scaling, back substitution.
  Eigen::VectorXd y = rhs;
  for (Eigen::Index i = 1; i < n; ++i) y[i] -= l[i - 1] * y[i - 1];
  for (Eigen::Index i = 0; i < n; ++i) y[i] /= d[i];
  for (Eigen::Index i = n - 2; i >= 0; --i) y[i] -= l[i] * y[i + 1];
  return y;
}

}  // namespace nlad
