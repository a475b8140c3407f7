#include "nlad/diagnostics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace nlad {

EnergyBreakdown energy_breakdown(const Mesh& mesh, const Eigen::SparseMatrix<double>& elastic,
                                 const Eigen::SparseMatrix<double>& surface_stiffness,
                                 const NonlocalOperator& op, const MonotoneGraph& beta,
                                 const SolverConfig& config, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& chi) {
  const int n = mesh.num_contact();
  assert(chi.size() == n);
  assert(u.size() == 2 * mesh.num_nodes());

  EnergyBreakdown out;
  out.elastic = 0.5 * u.dot(elastic * u);
  out.gradient = 0.5 * chi.dot(surface_stiffness * chi);

  const Eigen::MatrixX2d trace = contact_trace(mesh, u);
  const Eigen::VectorXd sq = trace.rowwise().squaredNorm();
  const Eigen::VectorXd k_chi = op.apply(chi);
  for (int c = 0; c < n; ++c) {
    const double w = mesh.contact_weights[c];
    const double pen = std::max(-trace(c, 1), 0.0);
    out.contact += w * pen * pen / (2.0 * config.eps_u);
    out.local += 0.5 * w * chi[c] * sq[c];
    out.nonlocal += 0.5 * w * chi[c] * sq[c] * k_chi[c];
    out.beta += w * beta.yosida_primitive(config.eps, chi[c]);
    out.gamma += w * config.gamma(chi[c]);
  }
  return out;
}

double energy_residual(const EnergyBreakdown& now, const EnergyBreakdown& prev, double r_u,
                       double r_chi, double rho_term, double work, double dt) {
  return now.total() - prev.total() + dt * (2.0 * r_u + 2.0 * r_chi + rho_term) - work;
}

DissipationCheck check_energy_dissipation(const std::vector<StepRecord>& records) {
  DissipationCheck out;
  double sum = 0.0;
  for (const StepRecord& r : records) {
    out.max_interval = std::max(out.max_interval, std::abs(r.residual));
    sum += r.residual;
  }
  out.window_sum = std::abs(sum);
  return out;
}

ConfinementCheck check_confinement(const std::vector<StepRecord>& records) {
  ConfinementCheck out;
  for (const StepRecord& r : records) {
    out.below = std::max(out.below, -r.min_chi);
    out.above = std::max(out.above, r.max_chi - 1.0);
  }
  out.below = std::max(out.below, 0.0);
  out.above = std::max(out.above, 0.0);
  return out;
}

double max_upward_increment(const std::vector<StepRecord>& records) {
  double out = 0.0;
  for (const StepRecord& r : records) out = std::max(out, r.max_increment);
  return out;
}

double max_positive_residual(const std::vector<StepRecord>& records) {
  double out = 0.0;
  for (const StepRecord& r : records) out = std::max(out, r.residual);
  return out;
}

double window_violation(const std::vector<StepRecord>& records) {
  double sum = 0.0;
  for (const StepRecord& r : records) sum += r.residual;
  return std::max(sum, 0.0);
}

}  // namespace nlad
