#include "nlad/coupler.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "nlad/assembly.hpp"
#include "nlad/errors.hpp"

namespace nlad {

namespace {

KernelSpec make_kernel(const SolverConfig& c) {
  return c.kernel_kind == KernelKind::Constant ? KernelSpec::constant(c.kernel_k0)
                                               : KernelSpec::elongation(c.kernel_d);
}

MomentumOptions momentum_options(const SolverConfig& c) {
  MomentumOptions o;
  o.eps_u = c.eps_u;
  o.max_newton = c.momentum_max_newton;
  o.tol = c.momentum_tol;
  o.max_cg = c.momentum_max_cg;
  return o;
}

FlowRuleOptions flow_options(const SolverConfig& c) {
  FlowRuleOptions o;
  o.eps = c.eps;
  o.max_newton = c.flow_max_newton;
  o.tol = c.flow_tol;
  return o;
}

double weighted_l2(const Mesh& mesh, const Eigen::VectorXd& v) {
  double sum = 0.0;
  for (int i = 0; i < v.size(); ++i) sum += mesh.contact_weights[i] * v[i] * v[i];
  return std::sqrt(sum);
}

double max_positive_penetration(const Mesh& mesh, const Eigen::VectorXd& u) {
  return std::max(normal_trace(mesh, u).maxCoeff(), 0.0);
}

}  // namespace

System::System(const SolverConfig& config_in)
    : config(config_in),
      mesh(build_mesh(config.nx, config.ny)),
      kernel(make_kernel(config)),
      op(kernel, mesh.contact_arclength, mesh.contact_weights),
      momentum(mesh, {config.lambda, config.mu}, {config.lambda_v, config.mu_v}, op,
               momentum_options(config)),
      flow(mesh, flow_options(config)),
      surface_stiffness(assemble_surface_laplacian(mesh)),
      base_load(assemble_load(mesh, {config.fx, config.fy}, {config.gx, config.gy})) {}

EnergyBreakdown System::energy(const Eigen::VectorXd& u, const Eigen::VectorXd& chi) const {
  return energy_breakdown(mesh, momentum.elastic_matrix(), surface_stiffness, op,
                          flow.options().beta, config, u, chi);
}

CoupledStepResult step_coupled(const System& sys, const Eigen::VectorXd& u_prev,
                               const Eigen::VectorXd& chi_prev, double t_new) {
  const SolverConfig& c = sys.config;
  const double dt = c.dt;
  const Eigen::VectorXd load = sys.load_at(t_new);
  Eigen::VectorXd gamma_prime(chi_prev.size());
  for (int i = 0; i < chi_prev.size(); ++i) gamma_prime[i] = c.gamma_prime(chi_prev[i]);

  CoupledStepResult out;
  Eigen::VectorXd chi_k = chi_prev;
  std::vector<double> history;
  for (int sweep = 0; sweep < c.max_fp_iters; ++sweep) {
    const MomentumResult m = sys.momentum.step(u_prev, chi_k, load, dt);
    const Eigen::VectorXd rhs = coupling_rhs(sys.mesh, m.u, chi_k, sys.op);
    const FlowRuleResult f = sys.flow.step(chi_prev, rhs, gamma_prime, dt);
    const Eigen::VectorXd chi_next = c.theta * f.chi + (1.0 - c.theta) * chi_k;

    const double delta = weighted_l2(sys.mesh, chi_next - chi_k);
    history.push_back(delta);
    out.newton_u += m.newton_iters;
    out.newton_chi += f.newton_iters;
    chi_k = chi_next;

    if (delta <= c.tol_fp) {
      out.u = m.u;
      out.chi = chi_k;
      out.zeta = m.zeta;
      out.omega = f.omega;
      out.xi = f.xi;
      out.fp_iters = sweep + 1;
      return out;
    }
  }
  throw FixedPointDivergence(history, "no contraction to " + std::to_string(c.tol_fp) + " within " +
                                          std::to_string(c.max_fp_iters) +
                                          " sweeps at t = " + std::to_string(t_new));
}

int RunResult::total_fp_iters() const {
  int sum = 0;
  for (const StepRecord& r : records) sum += r.fp_iters;
  return sum;
}

RunResult run_from_state(const System& sys, const State& start, double t_final) {
  const double dt = sys.config.dt;
  const int n = sys.mesh.num_contact();
  assert(start.u.size() == 2 * sys.mesh.num_nodes());
  assert(start.chi.size() == n);
  if (t_final < start.t) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "time.t_final",
                      "end time lies before the start state");
  }
  const int steps = static_cast<int>(std::llround((t_final - start.t) / dt));

  RunResult out;
  Eigen::VectorXd u = start.u;
  Eigen::VectorXd chi = start.chi;

  StepRecord row;
  row.t = start.t;
  row.energy = sys.energy(u, chi);
  row.min_chi = chi.minCoeff();
  row.max_chi = chi.maxCoeff();
  row.max_penetration = max_positive_penetration(sys.mesh, u);
  out.records.push_back(row);
  out.u_history.push_back(u);
  out.chi_history.push_back(chi);

  EnergyBreakdown prev_energy = row.energy;
  for (int k = 1; k <= steps; ++k) {
    const double t = start.t + k * dt;
    const CoupledStepResult s = step_coupled(sys, u, chi, t);
    const Eigen::VectorXd du = s.u - u;
    const Eigen::VectorXd dchi = s.chi - chi;

    StepRecord r;
    r.t = t;
    r.energy = sys.energy(s.u, s.chi);
    const Eigen::VectorXd v = du / dt;
    r.r_u = 0.5 * v.dot(sys.momentum.viscous_matrix() * v);
    for (int i = 0; i < n; ++i) {
      const double rate = dchi[i] / dt;
      r.r_chi += 0.5 * sys.mesh.contact_weights[i] * rate * rate;
      r.rho_term += sys.mesh.contact_weights[i] * s.omega[i] * rate;
    }
    r.work = sys.load_at(t - 0.5 * dt).dot(du);
    r.residual = energy_residual(r.energy, prev_energy, r.r_u, r.r_chi, r.rho_term, r.work, dt);
    r.min_chi = s.chi.minCoeff();
    r.max_chi = s.chi.maxCoeff();
    r.max_increment = std::max(dchi.maxCoeff(), 0.0);
    r.max_penetration = max_positive_penetration(sys.mesh, s.u);
    r.fp_iters = s.fp_iters;
    r.newton_u = s.newton_u;
    r.newton_chi = s.newton_chi;
    out.records.push_back(r);

    u = s.u;
    chi = s.chi;
    out.u_history.push_back(u);
    out.chi_history.push_back(chi);
    prev_energy = r.energy;
  }

  out.final_state = State{start.t + steps * dt, u, chi};
  return out;
}

RunResult run_simulation(const System& sys) {
  State start;
  start.t = 0.0;
  start.u = Eigen::VectorXd::Zero(2 * sys.mesh.num_nodes());
  start.chi = Eigen::VectorXd::Constant(sys.mesh.num_contact(), sys.config.chi0);
  return run_from_state(sys, start, sys.config.t_final);
}

TrajectoryDistance trajectory_distance(const Mesh& mesh,
                                       const Eigen::SparseMatrix<double>& elastic,
                                       const std::vector<Eigen::VectorXd>& chi_a,
                                       const std::vector<Eigen::VectorXd>& chi_b,
                                       const std::vector<Eigen::VectorXd>& u_a,
                                       const std::vector<Eigen::VectorXd>& u_b, double dt) {
  assert(chi_a.size() == chi_b.size() && u_a.size() == u_b.size() && chi_a.size() == u_a.size());
  TrajectoryDistance out;
  double sum_l2 = 0.0;
  double sum_h1 = 0.0;
  for (size_t k = 1; k < chi_a.size(); ++k) {
    const Eigen::VectorXd d = chi_a[k] - chi_b[k];
    double l2 = 0.0;
    for (int i = 0; i < d.size(); ++i) l2 += mesh.contact_weights[i] * d[i] * d[i];
    sum_l2 += dt * l2;
    const Eigen::VectorXd du = u_a[k] - u_b[k];
    sum_h1 += dt * du.dot(elastic * du);
  }
  out.l2_l2 = std::sqrt(sum_l2);
  out.l2_h1 = std::sqrt(sum_h1);
  return out;
}

EpsilonStudy epsilon_continuation(const SolverConfig& base, const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) {
    throw ConfigError(ConfigError::Kind::InvalidValue, "eps-list",
                      "need at least two values to compare");
  }
  for (size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) {
      throw ConfigError(ConfigError::Kind::InvalidValue, "eps-list", "values must be positive");
    }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw ConfigError(ConfigError::Kind::InvalidValue, "eps-list",
                        "values must be strictly decreasing");
    }
  }

  EpsilonStudy study;
  study.eps_values = eps_list;
  for (double eps : eps_list) {
    SolverConfig c = base;
    c.eps = eps;
    const System sys(c);
    study.runs.push_back(run_simulation(sys));
  }

  const Mesh mesh = build_mesh(base.nx, base.ny);
  const Eigen::SparseMatrix<double> elastic = assemble_elastic(mesh, {base.lambda, base.mu});
  for (size_t i = 0; i + 1 < study.runs.size(); ++i) {
    study.consecutive.push_back(trajectory_distance(
        mesh, elastic, study.runs[i].chi_history, study.runs[i + 1].chi_history,
        study.runs[i].u_history, study.runs[i + 1].u_history, base.dt));
  }
  return study;
}

}  // namespace nlad
