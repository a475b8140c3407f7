#pragma once

#include <string>

namespace nlad {

enum class KernelKind { Constant, Elongation };
enum class LoadProfile { Constant, Ramp, Sine };

// Complete description of one simulation run.  Parsed from a flat
// key = value file with '#' comments; every key is either required or has the
// default recorded here, duplicates and unknown keys are rejected, and the
// kind/profile-conditional keys must be absent when they do not apply.
struct SolverConfig {
  // mesh.*  (required)
  int nx = 0;
  int ny = 0;

  // material.*  (required): lambda/mu elastic, lambda_v/mu_v viscous
  double lambda = 0.0;
  double mu = 0.0;
  double lambda_v = 0.0;
  double mu_v = 0.0;

  // kernel.*  (kind required; exactly one of k0 / d with it)
  KernelKind kernel_kind = KernelKind::Constant;
  double kernel_k0 = 0.0;  // kind = constant
  double kernel_d = 0.0;   // kind = elongation

  // cohesion.*  (required): gamma(chi) = c0 + c1 chi + c2 chi^2
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  // load.*  (fx, fy required; the rest defaulted)
  double fx = 0.0;
  double fy = 0.0;
  double gx = 0.0;  // Neumann traction, default 0
  double gy = 0.0;
  LoadProfile profile = LoadProfile::Constant;
  double t_ramp = 0.0;  // profile = ramp
  double period = 0.0;  // profile = sine

  // time.*  (required)
  double dt = 0.0;
  double t_final = 0.0;

  // regularization.*  (required)
  double eps = 0.0;
  double eps_u = 0.0;

  // fixed_point.*  (tol required, may be "inf"; rest defaulted)
  double tol_fp = 0.0;
  double theta = 1.0;
  int max_fp_iters = 200;

  // momentum.* / flow.*  (defaulted solver knobs)
  int momentum_max_newton = 50;
  double momentum_tol = 1e-10;
  int momentum_max_cg = 50000;
  int flow_max_newton = 100;
  double flow_tol = 1e-9;

  // init.*  (chi_value required, in [0, 1]; displacement always starts at 0)
  double chi0 = 1.0;

  // output.*  (defaulted): snapshot cadence in steps, 0 disables
  int snapshot_every = 10;

  double gamma(double chi) const { return c0 + c1 * chi + c2 * chi * chi; }
  double gamma_prime(double chi) const { return c1 + 2.0 * c2 * chi; }

  // Time modulation multiplying both the body force and the traction.
  double load_scale(double t) const;

  bool operator==(const SolverConfig&) const = default;
};

// Parses configuration text; throws ConfigError with the offending key and a
// line-numbered detail.  load_config wraps it with file access (IoError).
SolverConfig parse_config(const std::string& text);
SolverConfig load_config(const std::string& path);

// Canonical emission: fixed key order, round-trip-exact numbers.  Satisfies
// parse_config(emit_config(c)) == c for every valid config.
std::string emit_config(const SolverConfig& config);

// The pinned reference scenario used by the documentation and the default
// command-line runs.
SolverConfig default_scenario();

}  // namespace nlad
