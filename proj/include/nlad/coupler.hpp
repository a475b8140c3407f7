#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "nlad/config.hpp"
#include "nlad/diagnostics.hpp"
#include "nlad/flow_rule.hpp"
#include "nlad/kernel.hpp"
#include "nlad/mesh.hpp"
#include "nlad/momentum.hpp"

namespace nlad {

// Everything a run needs, assembled once from a validated config.  The two
// sub-solvers keep references into this object, so it is pinned in place.
struct System {
  explicit System(const SolverConfig& config);
  System(const System&) = delete;
  System& operator=(const System&) = delete;

  SolverConfig config;
  Mesh mesh;
  KernelSpec kernel;
  NonlocalOperator op;
  MomentumSolver momentum;
  FlowRuleSolver flow;
  Eigen::SparseMatrix<double> surface_stiffness;
  Eigen::VectorXd base_load;

  Eigen::VectorXd load_at(double t) const { return config.load_scale(t) * base_load; }
  EnergyBreakdown energy(const Eigen::VectorXd& u, const Eigen::VectorXd& chi) const;
};

// A restartable point of the evolution.
struct State {
  double t = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd chi;
};

struct CoupledStepResult {
  Eigen::VectorXd u;
  Eigen::VectorXd chi;
  Eigen::VectorXd zeta;   // contact reactions from the accepted displacement
  Eigen::VectorXd omega;  // rate-graph selection from the accepted damage
  Eigen::VectorXd xi;     // confinement selection
  int fp_iters = 0;
  int newton_u = 0;    // summed over fixed-point sweeps
  int newton_chi = 0;  // summed over fixed-point sweeps
};

// One time step of the coupled problem by a damped fixed point over the two
// sub-solvers: displacement against frozen damage, then damage against the
// frozen displacement trace, relaxed by theta.  Convergence is measured by
// the weighted contact-line L2 norm of the damage update; an infinite
// tolerance accepts the first sweep (pure staggered mode).  Throws
// FixedPointDivergence with the update history when the cap is reached.
CoupledStepResult step_coupled(const System& sys, const Eigen::VectorXd& u_prev,
                               const Eigen::VectorXd& chi_prev, double t_new);

struct RunResult {
  std::vector<StepRecord> records;         // one row per time level, row 0 initial
  std::vector<Eigen::VectorXd> u_history;  // same indexing as records
  std::vector<Eigen::VectorXd> chi_history;
  State final_state;

  int total_fp_iters() const;
};

// Marches round((t_final - start.t) / dt) uniform steps from the given state.
RunResult run_from_state(const System& sys, const State& start, double t_final);

// Fresh run from the configured initial data over [0, t_final].
RunResult run_simulation(const System& sys);

// Distance between two trajectories sampled on the same grid: damage in the
// discrete L2-in-time contact-line L2 norm, displacement in L2-in-time of
// the elastic energy norm, which is H1-equivalent on the clamped space.
struct TrajectoryDistance {
  double l2_l2 = 0.0;
  double l2_h1 = 0.0;
};
TrajectoryDistance trajectory_distance(const Mesh& mesh,
                                       const Eigen::SparseMatrix<double>& elastic,
                                       const std::vector<Eigen::VectorXd>& chi_a,
                                       const std::vector<Eigen::VectorXd>& chi_b,
                                       const std::vector<Eigen::VectorXd>& u_a,
                                       const std::vector<Eigen::VectorXd>& u_b, double dt);

// Reruns the same scenario over a strictly decreasing list of Yosida
// parameters and reports the distance between consecutive trajectories.
struct EpsilonStudy {
  std::vector<double> eps_values;
  std::vector<RunResult> runs;
  std::vector<TrajectoryDistance> consecutive;
};
EpsilonStudy epsilon_continuation(const SolverConfig& base, const std::vector<double>& eps_list);

}  // namespace nlad
