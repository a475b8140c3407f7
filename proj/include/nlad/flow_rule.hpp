#pragma once

#include <Eigen/Dense>

#include "nlad/kernel.hpp"
#include "nlad/mesh.hpp"
#include "nlad/monotone.hpp"

namespace nlad {

struct FlowRuleOptions {
  double eps = 1e-3;  // Yosida parameter shared by both regularized graphs
  int max_newton = 100;
  double tol = 1e-9;  // strong-form residual target, max_i |R_i| / w_i
  MonotoneGraph rho = MonotoneGraph::indicator_nonpositive();
  MonotoneGraph beta = MonotoneGraph::indicator_unit_interval();
};

struct FlowRuleResult {
  Eigen::VectorXd chi;    // damage at the contact nodes
  Eigen::VectorXd omega;  // rho_eps((chi - chi_prev) / dt), the rate selection
  Eigen::VectorXd xi;     // beta_eps(chi), the confinement selection
  int newton_iters = 0;
  double energy = 0.0;       // incremental functional at the returned state
  double energy_prev = 0.0;  // incremental functional at chi_prev
};

// Implicit damage step on the contact line: minimizes the strictly convex
// incremental functional
//
//   G(chi) = sum_i w_i [ d_i^2/(2 dt) + dt P_rho(d_i/dt) + P_beta(chi_i)
//                        + (gamma_prime_i - rhs_i) chi_i ] + 1/2 chi' L chi,
//
// d = chi - chi_prev, P_* the Moreau envelopes at eps, L the surface
// stiffness.  The optimality system is solved by semismooth Newton with a
// direct tridiagonal factorization; convergence is declared on the
// strong-form residual max_i |R_i| / w_i <= tol.
class FlowRuleSolver {
 public:
  FlowRuleSolver(const Mesh& mesh, const FlowRuleOptions& options);

  FlowRuleResult step(const Eigen::VectorXd& chi_prev, const Eigen::VectorXd& rhs,
                      const Eigen::VectorXd& gamma_prime, double dt) const;

  double incremental_energy(const Eigen::VectorXd& chi, const Eigen::VectorXd& chi_prev,
                            const Eigen::VectorXd& rhs, const Eigen::VectorXd& gamma_prime,
                            double dt) const;

  const FlowRuleOptions& options() const { return options_; }

 private:
  Eigen::VectorXd residual(const Eigen::VectorXd& chi, const Eigen::VectorXd& chi_prev,
                           const Eigen::VectorXd& rhs, const Eigen::VectorXd& gamma_prime,
                           double dt) const;

  // Surface stiffness chi' -> L chi restricted to the contact line, stored as
  // its tridiagonal bands.
  Eigen::VectorXd apply_stiffness(const Eigen::VectorXd& chi) const;

  FlowRuleOptions options_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd l_diag_;
  Eigen::VectorXd l_sub_;
};

// Elongation forcing of the damage equation from a frozen displacement trace
// and lagged damage profile:
//   r_i = -1/2 |u_i|^2 - 1/2 |u_i|^2 (K chi)_i - 1/2 (K (chi |u|^2))_i .
Eigen::VectorXd coupling_rhs(const Mesh& mesh, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& chi_lag, const NonlocalOperator& op);

}  // namespace nlad
