#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "nlad/config.hpp"
#include "nlad/kernel.hpp"
#include "nlad/mesh.hpp"
#include "nlad/monotone.hpp"

namespace nlad {

// The stored energy split into its seven contributions.  Regularized terms
// use the same Moreau envelopes the solvers minimize, so the pieces sum to
// the discrete Lyapunov function of the scheme.
struct EnergyBreakdown {
  double elastic = 0.0;   // 1/2 a(u, u)
  double contact = 0.0;   // sum_c w_c max(-u_y, 0)^2 / (2 eps_u)
  double local = 0.0;     // 1/2 sum_c w_c chi_c |u_c|^2
  double nonlocal = 0.0;  // 1/2 sum_c w_c chi_c |u_c|^2 (K chi)_c
  double gradient = 0.0;  // 1/2 chi' L chi
  double beta = 0.0;      // sum_c w_c B_eps(chi_c), confinement envelope
  double gamma = 0.0;     // sum_c w_c gamma(chi_c), cohesion

  double total() const {
    return elastic + contact + local + nonlocal + gradient + beta + gamma;
  }
};

EnergyBreakdown energy_breakdown(const Mesh& mesh, const Eigen::SparseMatrix<double>& elastic,
                                 const Eigen::SparseMatrix<double>& surface_stiffness,
                                 const NonlocalOperator& op, const MonotoneGraph& beta,
                                 const SolverConfig& config, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& chi);

// One time-step row of the run ledger.
struct StepRecord {
  double t = 0.0;
  EnergyBreakdown energy;
  double r_u = 0.0;       // 1/2 b(du/dt, du/dt)
  double r_chi = 0.0;     // 1/2 sum_c w_c (dchi/dt)^2
  double rho_term = 0.0;  // sum_c w_c omega_c dchi_c/dt, rate-graph dissipation
  double work = 0.0;      // <load(t - dt/2), du>
  double residual = 0.0;  // discrete energy identity defect, see energy_residual
  double min_chi = 0.0;
  double max_chi = 0.0;
  double max_increment = 0.0;    // largest upward damage move this step
  double max_penetration = 0.0;  // largest positive normal trace violation
  int fp_iters = 0;
  int newton_u = 0;
  int newton_chi = 0;
};

// Defect of the discrete energy identity over one step:
//   residual = E_n - E_{n-1} + dt (2 r_u + 2 r_chi + rho_term) - work .
// The implicit scheme makes this nonpositive up to coupling error; its decay
// under time-step refinement is the accuracy monitor of the whole solver.
double energy_residual(const EnergyBreakdown& now, const EnergyBreakdown& prev, double r_u,
                       double r_chi, double rho_term, double work, double dt);

struct DissipationCheck {
  double max_interval = 0.0;  // max_n |residual_n|
  double window_sum = 0.0;    // |sum_n residual_n|
};
DissipationCheck check_energy_dissipation(const std::vector<StepRecord>& records);

struct ConfinementCheck {
  double below = 0.0;  // max_n max(0 - min_chi_n, 0)
  double above = 0.0;  // max_n max(max_chi_n - 1, 0)
};
ConfinementCheck check_confinement(const std::vector<StepRecord>& records);

// Largest single-step upward damage move across the run.
double max_upward_increment(const std::vector<StepRecord>& records);

// Positive parts of the identity defect: negative residuals are extra
// numerical dissipation and always admissible, so only these two numbers
// are bounded by the dissipation checks.
double max_positive_residual(const std::vector<StepRecord>& records);
double window_violation(const std::vector<StepRecord>& records);

}  // namespace nlad
