#include "nlad/flow_rule.hpp"

#include <cassert>
#include <cmath>

#include "nlad/assembly.hpp"
#include "nlad/errors.hpp"
#include "nlad/linear_solver.hpp"

namespace nlad {

FlowRuleSolver::FlowRuleSolver(const Mesh& mesh, const FlowRuleOptions& options)
    : options_(options) {
  const int n = mesh.num_contact();
  weights_ = Eigen::Map<const Eigen::VectorXd>(mesh.contact_weights.data(), n);
  const Eigen::SparseMatrix<double> l = assemble_surface_laplacian(mesh);
  l_diag_.resize(n);
  l_sub_.resize(n - 1);
  for (int i = 0; i < n; ++i) l_diag_[i] = l.coeff(i, i);
  for (int i = 0; i + 1 < n; ++i) l_sub_[i] = l.coeff(i + 1, i);
}

Eigen::VectorXd FlowRuleSolver::apply_stiffness(const Eigen::VectorXd& chi) const {
  const int n = static_cast<int>(chi.size());
  Eigen::VectorXd out = l_diag_.cwiseProduct(chi);
  for (int i = 0; i + 1 < n; ++i) {
    out[i] += l_sub_[i] * chi[i + 1];
    out[i + 1] += l_sub_[i] * chi[i];
  }
  return out;
}

Eigen::VectorXd FlowRuleSolver::residual(const Eigen::VectorXd& chi,
                                         const Eigen::VectorXd& chi_prev,
                                         const Eigen::VectorXd& rhs,
                                         const Eigen::VectorXd& gamma_prime, double dt) const {
  const double eps = options_.eps;
  Eigen::VectorXd r = apply_stiffness(chi);
  for (int i = 0; i < chi.size(); ++i) {
    const double rate = (chi[i] - chi_prev[i]) / dt;
    r[i] += weights_[i] * (rate + options_.rho.yosida_value(eps, rate) +
                           options_.beta.yosida_value(eps, chi[i]) + gamma_prime[i] - rhs[i]);
  }
  return r;
}

FlowRuleResult FlowRuleSolver::step(const Eigen::VectorXd& chi_prev, const Eigen::VectorXd& rhs,
                                    const Eigen::VectorXd& gamma_prime, double dt) const {
  const int n = static_cast<int>(weights_.size());
  assert(chi_prev.size() == n && rhs.size() == n && gamma_prime.size() == n);
  assert(dt > 0.0);
  const double eps = options_.eps;

  FlowRuleResult result;
  Eigen::VectorXd chi = chi_prev;
  for (int it = 0;; ++it) {
    const Eigen::VectorXd r = residual(chi, chi_prev, rhs, gamma_prime, dt);
    const double rnorm = r.cwiseQuotient(weights_).cwiseAbs().maxCoeff();
    if (rnorm <= options_.tol) {
      result.newton_iters = it;
      break;
    }
    if (it == options_.max_newton) throw NonConvergence("step_flow_rule", it, rnorm);

    Eigen::VectorXd jac_diag = l_diag_;
    for (int i = 0; i < n; ++i) {
      const double rate = (chi[i] - chi_prev[i]) / dt;
      jac_diag[i] += weights_[i] * ((1.0 + options_.rho.yosida_slope(eps, rate)) / dt +
                                    options_.beta.yosida_slope(eps, chi[i]));
    }
    chi += tridiagonal_solve(jac_diag, l_sub_, -r);
  }

  result.chi = chi;
  result.omega.resize(n);
  result.xi.resize(n);
  for (int i = 0; i < n; ++i) {
    result.omega[i] = options_.rho.yosida_value(eps, (chi[i] - chi_prev[i]) / dt);
    result.xi[i] = options_.beta.yosida_value(eps, chi[i]);
  }
  result.energy = incremental_energy(chi, chi_prev, rhs, gamma_prime, dt);
  result.energy_prev = incremental_energy(chi_prev, chi_prev, rhs, gamma_prime, dt);
  return result;
}

double FlowRuleSolver::incremental_energy(const Eigen::VectorXd& chi,
                                          const Eigen::VectorXd& chi_prev,
                                          const Eigen::VectorXd& rhs,
                                          const Eigen::VectorXd& gamma_prime, double dt) const {
  const double eps = options_.eps;
  double g = 0.5 * chi.dot(apply_stiffness(chi));
  for (int i = 0; i < chi.size(); ++i) {
    const double d = chi[i] - chi_prev[i];
    g += weights_[i] *
         (d * d / (2.0 * dt) + dt * options_.rho.yosida_primitive(eps, d / dt) +
          options_.beta.yosida_primitive(eps, chi[i]) + (gamma_prime[i] - rhs[i]) * chi[i]);
  }
  return g;
}

Eigen::VectorXd coupling_rhs(const Mesh& mesh, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& chi_lag, const NonlocalOperator& op) {
  const int n = mesh.num_contact();
  assert(chi_lag.size() == n);
  const Eigen::MatrixX2d trace = contact_trace(mesh, u);
  const Eigen::VectorXd sq = trace.rowwise().squaredNorm();
  const Eigen::VectorXd k_chi = op.apply(chi_lag);
  const Eigen::VectorXd k_chi_sq = op.apply(chi_lag.cwiseProduct(sq));
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    r[i] = -0.5 * sq[i] * (1.0 + k_chi[i]) - 0.5 * k_chi_sq[i];
  }
  return r;
}

}  // namespace nlad
