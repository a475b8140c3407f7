#include "nlad/momentum.hpp"

#include <cmath>
#include <iostream>

#include "nlad/errors.hpp"
#include "nlad/linear_solver.hpp"

namespace nlad {

MomentumSolver::MomentumSolver(const Mesh& mesh, const LamePair& elastic, const LamePair& viscous,
                               const NonlocalOperator& kernel, const MomentumOptions& options)
    : mesh_(mesh),
      kernel_(kernel),
      options_(options),
      a_(assemble_elastic(mesh, elastic)),
      b_(assemble_elastic(mesh, viscous)) {
  clamped_.assign(2 * mesh_.num_nodes(), false);
  for (int n : mesh_.dirichlet_nodes) {
    clamped_[2 * n] = true;
    clamped_[2 * n + 1] = true;
  }
}

Eigen::VectorXd MomentumSolver::adhesive_diag(const Eigen::VectorXd& chi_bar) const {
  // Small negative excursions are a normal regularization transient; warn
  // only well beyond any Yosida overshoot.
  if (chi_bar.minCoeff() < -0.1) {
    std::cerr << "momentum: damage iterate has negative entries (min " << chi_bar.minCoeff()
              << ")\n";
  }
  const Eigen::VectorXd k_chi = kernel_.apply(chi_bar);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(2 * mesh_.num_nodes());
  for (int c = 0; c < mesh_.num_contact(); ++c) {
    const int n = mesh_.contact_nodes[c];
    if (clamped_[2 * n]) continue;
    const double v = mesh_.contact_weights[c] * chi_bar[c] * (1.0 + k_chi[c]);
    diag[2 * n] = v;
    diag[2 * n + 1] = v;
  }
  return diag;
}

Eigen::VectorXd MomentumSolver::residual(const Eigen::VectorXd& u, const Eigen::VectorXd& u_prev,
                                         const Eigen::VectorXd& c_diag,
                                         const Eigen::VectorXd& load, double dt) const {
  Eigen::VectorXd r = b_ * ((u - u_prev) / dt);
  r.noalias() += a_ * u;
  r += c_diag.cwiseProduct(u);
  for (int c = 0; c < mesh_.num_contact(); ++c) {
    const int n = mesh_.contact_nodes[c];
    if (clamped_[2 * n + 1]) continue;
    const double pen = std::max(-u[2 * n + 1], 0.0);
    r[2 * n + 1] -= mesh_.contact_weights[c] * pen / options_.eps_u;
  }
  r -= load;
  // Clamped rows are identities acting on zero entries; keep them exactly zero.
  for (int n : mesh_.dirichlet_nodes) {
    r[2 * n] = 0.0;
    r[2 * n + 1] = 0.0;
  }
  return r;
}

double MomentumSolver::incremental_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& u_prev,
                                          const Eigen::VectorXd& chi_bar,
                                          const Eigen::VectorXd& load, double dt) const {
  const Eigen::VectorXd c_diag = adhesive_diag(chi_bar);
  const Eigen::VectorXd du = u - u_prev;
  double j = 0.5 / dt * du.dot(b_ * du) + 0.5 * u.dot(a_ * u);
  j += 0.5 * c_diag.dot(u.cwiseProduct(u));
  for (int c = 0; c < mesh_.num_contact(); ++c) {
    const int n = mesh_.contact_nodes[c];
    if (clamped_[2 * n + 1]) continue;
    const double pen = std::max(-u[2 * n + 1], 0.0);
    j += mesh_.contact_weights[c] * pen * pen / (2.0 * options_.eps_u);
  }
  j -= load.dot(u);
  return j;
}

Eigen::VectorXd MomentumSolver::contact_reactions(const Eigen::VectorXd& u) const {
  Eigen::VectorXd zeta(mesh_.num_contact());
  for (int c = 0; c < mesh_.num_contact(); ++c) {
    const int n = mesh_.contact_nodes[c];
    zeta[c] = mesh_.contact_weights[c] * std::max(-u[2 * n + 1], 0.0) / options_.eps_u;
  }
  return zeta;
}

MomentumResult MomentumSolver::step(const Eigen::VectorXd& u_prev, const Eigen::VectorXd& chi_bar,
                                    const Eigen::VectorXd& load, double dt) const {
  const Eigen::VectorXd c_diag = adhesive_diag(chi_bar);
  const auto energy = [&](const Eigen::VectorXd& v) {
    return incremental_energy(v, u_prev, chi_bar, load, dt);
  };

  Eigen::VectorXd u = u_prev;
  for (int n : mesh_.dirichlet_nodes) {
    u[2 * n] = 0.0;
    u[2 * n + 1] = 0.0;
  }

  const Eigen::SparseMatrix<double> base = a_ + (1.0 / dt) * b_;
  const double j_prev = energy(u);
  double j_current = j_prev;

  MomentumResult result;
  result.energy_prev = j_prev;

  for (int it = 0; it <= options_.max_newton; ++it) {
    const Eigen::VectorXd r = residual(u, u_prev, c_diag, load, dt);
    const double rnorm = r.cwiseAbs().maxCoeff();
    if (rnorm <= options_.tol) {
      result.u = u;
      result.zeta = contact_reactions(u);
      result.newton_iters = it;
      result.energy = j_current;
      return result;
    }
    if (it == options_.max_newton) throw NonConvergence("step_momentum", it, rnorm);

    // SPD linearization: base + adhesive diagonal + active penalty diagonal.
    // The penalty kink (u.n = 0) counts as active.
    Eigen::SparseMatrix<double> h = base;
    for (Eigen::Index d = 0; d < c_diag.size(); ++d) {
      if (c_diag[d] != 0.0) h.coeffRef(d, d) += c_diag[d];
    }
    for (int c = 0; c < mesh_.num_contact(); ++c) {
      const int n = mesh_.contact_nodes[c];
      if (clamped_[2 * n + 1]) continue;
      if (-u[2 * n + 1] >= 0.0) {
        h.coeffRef(2 * n + 1, 2 * n + 1) += mesh_.contact_weights[c] / options_.eps_u;
      }
    }

    Eigen::VectorXd delta = Eigen::VectorXd::Zero(u.size());
    const double cg_tol = std::max(1e-3 * options_.tol, 1e-15 * rnorm);
    pcg_solve(h, -r, delta, cg_tol, options_.max_cg);

    // Safeguard: the Newton direction descends the convex functional; halve
    // the step if rounding ever says otherwise.
    double step = 1.0;
    double j_next = energy(u + delta);
    int halvings = 0;
    while (j_next > j_current + 1e-12 * (1.0 + std::abs(j_current)) && halvings < 40) {
      step *= 0.5;
      j_next = energy(u + step * delta);
      ++halvings;
    }
    u += step * delta;
    j_current = j_next;
  }
  throw NonConvergence("step_momentum", options_.max_newton, 0.0);
}

}  // namespace nlad
