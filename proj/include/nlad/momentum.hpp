#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "nlad/assembly.hpp"
#include "nlad/kernel.hpp"
#include "nlad/mesh.hpp"

namespace nlad {

struct MomentumOptions {
  double eps_u = 1e-4;   // penalty parameter of the nonpenetration term
  int max_newton = 50;
  double tol = 1e-10;    // absolute max-norm residual target
  int max_cg = 50000;
};

struct MomentumResult {
  Eigen::VectorXd u;
  Eigen::VectorXd zeta;  // weight-scaled contact reactions, one per contact node
  int newton_iters = 0;
  double energy = 0.0;       // incremental functional at the returned state
  double energy_prev = 0.0;  // incremental functional at u_prev
};

// Implicit momentum step: minimizes the strictly convex incremental functional
//
//   J(u) = 1/(2 dt) b(u - u_prev, u - u_prev) + 1/2 a(u, u)
//        + 1/2 sum_c w_c chi_c (1 + (K chi)_c) |u_c|^2
//        + sum_c w_c max(u_c.n, 0)^2 / (2 eps_u)  -  <load, u>
//
// by a semismooth Newton method (penalty kink resolved toward the active
// branch) with Jacobi-preconditioned CG on the SPD linearization.  The frozen
// damage profile chi_bar enters only through the quadratic adhesive weight.
class MomentumSolver {
 public:
  MomentumSolver(const Mesh& mesh, const LamePair& elastic, const LamePair& viscous,
                 const NonlocalOperator& kernel, const MomentumOptions& options);

  MomentumResult step(const Eigen::VectorXd& u_prev, const Eigen::VectorXd& chi_bar,
                      const Eigen::VectorXd& load, double dt) const;

  double incremental_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& u_prev,
                            const Eigen::VectorXd& chi_bar, const Eigen::VectorXd& load,
                            double dt) const;

  Eigen::VectorXd contact_reactions(const Eigen::VectorXd& u) const;

  const Eigen::SparseMatrix<double>& elastic_matrix() const { return a_; }
  const Eigen::SparseMatrix<double>& viscous_matrix() const { return b_; }
  const MomentumOptions& options() const { return options_; }

 private:
  // w_c chi_c (1 + (K chi)_c) at both displacement components of each
  // unclamped contact node, zero elsewhere.
  Eigen::VectorXd adhesive_diag(const Eigen::VectorXd& chi_bar) const;

  Eigen::VectorXd residual(const Eigen::VectorXd& u, const Eigen::VectorXd& u_prev,
                           const Eigen::VectorXd& c_diag, const Eigen::VectorXd& load,
                           double dt) const;

  const Mesh& mesh_;
  const NonlocalOperator& kernel_;
  MomentumOptions options_;
  Eigen::SparseMatrix<double> a_;
  Eigen::SparseMatrix<double> b_;
  std::vector<bool> clamped_;
};

}  // namespace nlad
