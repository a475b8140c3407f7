#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nlad/coupler.hpp"
#include "nlad/errors.hpp"

using nlad::SolverConfig;
using nlad::State;
using nlad::System;

namespace {

SolverConfig small_scenario() {
  SolverConfig c = nlad::default_scenario();
  c.nx = c.ny = 4;
  c.t_final = 0.1;
  return c;
}

}  // namespace

TEST_CASE("zero load leaves the body at rest while cohesion holds the damage") {
  SolverConfig c = small_scenario();
  c.fy = 0.0;
  c.t_final = 0.2;
  const System sys(c);
  const auto run = nlad::run_simulation(sys);

  REQUIRE(run.records.size() == 21);
  for (const auto& u : run.u_history) CHECK(u.cwiseAbs().maxCoeff() == 0.0);
  for (size_t k = 1; k < run.records.size(); ++k) {
    const auto& r = run.records[k];
    // Cohesion pushes the damage into the regularized overshoot band above 1,
    // never below the previous level and never beyond O(eps).
    CHECK(r.min_chi >= 1.0 - 1e-9);
    CHECK(r.max_chi <= 1.0 + 2.0 * 0.1 * c.eps);
    CHECK(r.fp_iters <= 2);
    CHECK(std::abs(r.residual) <= 1e-6);
    CHECK(r.max_penetration == 0.0);
  }
}

TEST_CASE("zero horizon produces exactly one row") {
  SolverConfig c = small_scenario();
  c.t_final = 0.0;
  const System sys(c);
  const auto run = nlad::run_simulation(sys);
  CHECK(run.records.size() == 1);
  CHECK(run.u_history.size() == 1);
  CHECK(run.final_state.t == 0.0);
  CHECK(run.records[0].energy.total() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pressed scenario runs converged and keeps its invariants") {
  const SolverConfig c = small_scenario();
  const System sys(c);
  const auto run = nlad::run_simulation(sys);

  REQUIRE(run.records.size() == 11);
  for (size_t k = 1; k < run.records.size(); ++k) {
    const auto& r = run.records[k];
    CHECK(r.fp_iters >= 1);
    CHECK(r.fp_iters <= c.max_fp_iters);
    CHECK(r.min_chi >= 0.9);
    CHECK(r.max_chi <= 1.0 + 2.0 * 0.1 * c.eps);
    CHECK(r.max_penetration <= 1e-2);
    CHECK(std::abs(r.residual) <= 1e-3);
  }
  CHECK(run.records.back().energy.elastic > 0.0);
  CHECK(run.final_state.u.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("infinite tolerance is pure staggering") {
  SolverConfig c = small_scenario();
  c.tol_fp = std::numeric_limits<double>::infinity();
  const System sys(c);
  const auto run = nlad::run_simulation(sys);
  for (size_t k = 1; k < run.records.size(); ++k) CHECK(run.records[k].fp_iters == 1);
}

TEST_CASE("damping changes the path but not the fixed point") {
  SolverConfig tight = small_scenario();
  tight.t_final = 0.02;
  tight.tol_fp = 1e-12;
  SolverConfig damped = tight;
  damped.theta = 0.5;

  const System sys_a(tight);
  const System sys_b(damped);
  const auto run_a = nlad::run_simulation(sys_a);
  const auto run_b = nlad::run_simulation(sys_b);
  CHECK((run_a.final_state.chi - run_b.final_state.chi).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK((run_a.final_state.u - run_b.final_state.u).cwiseAbs().maxCoeff() <= 1e-9);
  CHECK(run_b.total_fp_iters() > run_a.total_fp_iters());
}

TEST_CASE("restarting from a mid-run state reproduces the tail exactly") {
  SolverConfig c = small_scenario();
  c.t_final = 0.2;
  const System sys(c);
  const auto full = nlad::run_simulation(sys);

  SolverConfig half = c;
  half.t_final = 0.1;
  const System sys_half(half);
  const auto first = nlad::run_simulation(sys_half);
  const auto tail = nlad::run_from_state(sys, first.final_state, 0.2);

  REQUIRE(tail.records.size() == 11);
  CHECK((tail.final_state.u - full.final_state.u).cwiseAbs().maxCoeff() == 0.0);
  CHECK((tail.final_state.chi - full.final_state.chi).cwiseAbs().maxCoeff() == 0.0);
  CHECK(tail.final_state.t == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(nlad::run_from_state(sys, full.final_state, 0.1), nlad::ConfigError);
}

TEST_CASE("trajectory distance matches hand values on synthetic histories") {
  const nlad::Mesh mesh = nlad::build_mesh(2, 2);
  const auto elastic = nlad::assemble_elastic(mesh, {1.0, 1.0});
  const int n = mesh.num_contact();
  const double dt = 0.25;

  std::vector<Eigen::VectorXd> chi_a(3, Eigen::VectorXd::Zero(n));
  std::vector<Eigen::VectorXd> chi_b = chi_a;
  std::vector<Eigen::VectorXd> u_a(3, Eigen::VectorXd::Zero(2 * mesh.num_nodes()));
  std::vector<Eigen::VectorXd> u_b = u_a;
  // Constant damage offset 0.1 on both compared rows, displacements equal.
  chi_b[1] = Eigen::VectorXd::Constant(n, 0.1);
  chi_b[2] = Eigen::VectorXd::Constant(n, 0.1);
  auto d = nlad::trajectory_distance(mesh, elastic, chi_a, chi_b, u_a, u_b, dt);
  CHECK(d.l2_l2 == doctest::Approx(0.1 * std::sqrt(2.0 * dt)).epsilon(1e-14));
  CHECK(d.l2_h1 == 0.0);

  // A tilted damage row adds weighted mass; a one-dof displacement bump on
  // one row contributes dt times that diagonal energy entry.
  chi_b[2] = mesh.contact_arclength;
  const int dof = 2 * mesh.node_index(1, 1);
  u_b[2][dof] = 1.0;
  d = nlad::trajectory_distance(mesh, elastic, chi_a, chi_b, u_a, u_b, dt);
  const double l2_row1 = 0.1 * 0.1;                       // weights sum to one
  const double l2_row2 = 0.25 * 0.0 + 0.5 * 0.25 + 0.25;  // x^2 under trapezoid
  CHECK(d.l2_l2 == doctest::Approx(std::sqrt(dt * (l2_row1 + l2_row2))).epsilon(1e-14));
  CHECK(d.l2_h1 == doctest::Approx(std::sqrt(dt * elastic.coeff(dof, dof))).epsilon(1e-14));
}

TEST_CASE("epsilon continuation validates its list and produces comparisons") {
  SolverConfig c = small_scenario();
  c.t_final = 0.05;
  CHECK_THROWS_AS(nlad::epsilon_continuation(c, {1e-2}), nlad::ConfigError);
  CHECK_THROWS_AS(nlad::epsilon_continuation(c, {1e-2, 1e-2}), nlad::ConfigError);
  CHECK_THROWS_AS(nlad::epsilon_continuation(c, {1e-3, 1e-2}), nlad::ConfigError);
  CHECK_THROWS_AS(nlad::epsilon_continuation(c, {1e-2, -1e-3}), nlad::ConfigError);

  const auto study = nlad::epsilon_continuation(c, {1e-2, 5e-3, 2.5e-3});
  REQUIRE(study.runs.size() == 3);
  REQUIRE(study.consecutive.size() == 2);
  for (const auto& d : study.consecutive) {
    CHECK(d.l2_l2 > 0.0);
    CHECK(d.l2_h1 > 0.0);
  }
}

TEST_CASE("a hopeless contraction target raises divergence with history") {
  SolverConfig c = small_scenario();
  c.tol_fp = 1e-16;
  c.theta = 0.5;
  c.max_fp_iters = 3;
  const System sys(c);
  try {
    nlad::run_simulation(sys);
    FAIL("expected FixedPointDivergence");
  } catch (const nlad::FixedPointDivergence& e) {
    CHECK(e.residual_history().size() == 3);
    CHECK(e.residual_history().front() > 0.0);
  }
}
