#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlad/config.hpp"
#include "nlad/errors.hpp"

using nlad::ConfigError;
using nlad::KernelKind;
using nlad::LoadProfile;
using nlad::SolverConfig;

namespace {

std::string base() { return nlad::emit_config(nlad::default_scenario()); }

// Removes the line defining `key` from the config text.
std::string drop(const std::string& text, const std::string& key) {
  const std::string needle = key + " = ";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.substr(0, pos) + text.substr(end + 1);
}

// Replaces the value of `key` in the config text.
std::string set(const std::string& text, const std::string& key, const std::string& value) {
  const std::string needle = key + " = ";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  const auto end = text.find('\n', pos);
  return text.substr(0, pos) + needle + value + text.substr(end);
}

ConfigError::Kind kind_of(const std::string& text, std::string* key = nullptr,
                          std::string* what = nullptr) {
  try {
    nlad::parse_config(text);
  } catch (const ConfigError& e) {
    if (key) *key = e.key();
    if (what) *what = e.what();
    return e.kind();
  }
  throw std::runtime_error("no ConfigError thrown");
}

}  // namespace

TEST_CASE("default scenario has the pinned reference values") {
  const SolverConfig c = nlad::default_scenario();
  CHECK(c.nx == 16);
  CHECK(c.ny == 16);
  CHECK(c.lambda == 1.0);
  CHECK(c.mu == 1.0);
  CHECK(c.lambda_v == 0.5);
  CHECK(c.mu_v == 0.5);
  CHECK(c.kernel_kind == KernelKind::Elongation);
  CHECK(c.kernel_d == 0.5);
  CHECK(c.c0 == 0.1);
  CHECK(c.c1 == -0.1);
  CHECK(c.c2 == 0.0);
  CHECK(c.fx == 0.0);
  CHECK(c.fy == -0.5);
  CHECK(c.profile == LoadProfile::Constant);
  CHECK(c.dt == 1e-2);
  CHECK(c.t_final == 1.0);
  CHECK(c.eps == 1e-3);
  CHECK(c.eps_u == 1e-4);
  CHECK(c.tol_fp == 1e-8);
  CHECK(c.theta == 1.0);
  CHECK(c.chi0 == 1.0);
  CHECK(c.gamma(1.0) == doctest::Approx(0.0).epsilon(1e-16));
  CHECK(c.gamma(0.0) == 0.1);
  CHECK(c.gamma_prime(0.3) == -0.1);
}

TEST_CASE("emit and parse round-trip exactly") {
  const SolverConfig c = nlad::default_scenario();
  CHECK(nlad::parse_config(nlad::emit_config(c)) == c);

  SolverConfig odd = c;
  odd.kernel_kind = KernelKind::Constant;
  odd.kernel_k0 = 0.123456789012345678;  // not representable, rounds once
  odd.kernel_d = 0.0;
  odd.profile = LoadProfile::Sine;
  odd.period = 0.3;
  odd.tol_fp = std::numeric_limits<double>::infinity();
  odd.gx = -1e-17;
  odd.theta = 0.75;
  CHECK(nlad::parse_config(nlad::emit_config(odd)) == odd);
}

TEST_CASE("comments whitespace and reordering are tolerated") {
  const std::string text =
      "# reference scenario, reordered\n"
      "time.t_final = 1\n"
      "\tmesh.nx=16   # inline comment\n"
      "mesh.ny   =16\n"
      "material.lambda = 1\nmaterial.mu = 1\n"
      "material.lambda_v = 0.5\nmaterial.mu_v = 0.5\n"
      "kernel.d = 0.5\nkernel.kind = elongation\n"
      "cohesion.c0 = 0.1\ncohesion.c1 = -0.1\ncohesion.c2 = 0\n"
      "load.fy = -0.5\nload.fx = 0\n"
      "time.dt = 0.01\n"
      "regularization.eps = 0.001\nregularization.eps_u = 0.0001\n"
      "fixed_point.tol = 1e-8\n"
      "init.chi_value = 1\n";
  CHECK(nlad::parse_config(text) == nlad::default_scenario());
}

TEST_CASE("missing required keys are reported by name") {
  for (const std::string key :
       {"mesh.nx", "material.mu_v", "kernel.kind", "cohesion.c2", "load.fy", "time.dt",
        "regularization.eps", "fixed_point.tol", "init.chi_value"}) {
    std::string got;
    CHECK(kind_of(drop(base(), key), &got) == ConfigError::Kind::MissingKey);
    CHECK(got == key);
  }
  // Dropping the kind-conditional parameter is also a missing key.
  std::string got;
  CHECK(kind_of(drop(base(), "kernel.d"), &got) == ConfigError::Kind::MissingKey);
  CHECK(got == "kernel.d");
}

TEST_CASE("unknown and duplicate keys are rejected") {
  std::string key;
  std::string what;
  CHECK(kind_of(base() + "mesh.nz = 4\n", &key, &what) == ConfigError::Kind::UnknownKey);
  CHECK(key == "mesh.nz");

  CHECK(kind_of(base() + "mesh.nx = 16\n", &key, &what) == ConfigError::Kind::InvalidValue);
  CHECK(key == "mesh.nx");
  CHECK(what.find("duplicate") != std::string::npos);
}

TEST_CASE("conditional keys must match the selected variant") {
  std::string key;
  CHECK(kind_of(base() + "kernel.k0 = 1\n", &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "kernel.k0");
  CHECK(kind_of(base() + "load.period = 1\n", &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "load.period");
  CHECK(kind_of(base() + "load.t_ramp = 1\n", &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "load.t_ramp");
}

TEST_CASE("malformed lines and values carry line information") {
  std::string key;
  std::string what;
  CHECK(kind_of("mesh.nx 16\n", &key, &what) == ConfigError::Kind::InvalidValue);
  CHECK(what.find("line 1") != std::string::npos);

  CHECK(kind_of(set(base(), "time.dt", "fast"), &key, &what) == ConfigError::Kind::InvalidValue);
  CHECK(key == "time.dt");
  CHECK(what.find("line") != std::string::npos);

  CHECK(kind_of(set(base(), "mesh.ny", "16.5"), &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "mesh.ny");
  CHECK(kind_of(set(base(), "mesh.ny", "16 cells"), &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "mesh.ny");
  CHECK(kind_of(set(base(), "load.fx", "nan"), &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "load.fx");
}

TEST_CASE("range validation rejects out-of-domain values") {
  const struct {
    const char* key;
    const char* value;
  } cases[] = {
      {"mesh.nx", "1"},          {"material.mu", "0"},
      {"material.lambda", "-1"}, {"kernel.d", "0"},
      {"time.dt", "0"},          {"time.t_final", "-0.5"},
      {"regularization.eps", "0"}, {"regularization.eps_u", "-1e-4"},
      {"fixed_point.tol", "0"},  {"init.chi_value", "1.2"},
  };
  for (const auto& c : cases) {
    std::string key;
    CHECK(kind_of(set(base(), c.key, c.value), &key) == ConfigError::Kind::InvalidValue);
    CHECK(key == c.key);
  }
  std::string key;
  CHECK(kind_of(base() + "fixed_point.theta = 1.5\n", &key) == ConfigError::Kind::InvalidValue);
  CHECK(key == "fixed_point.theta");
}

TEST_CASE("staggered mode spelling parses to an infinite tolerance") {
  const SolverConfig c = nlad::parse_config(set(base(), "fixed_point.tol", "inf"));
  CHECK(std::isinf(c.tol_fp));
  CHECK(nlad::emit_config(c).find("fixed_point.tol = inf\n") != std::string::npos);
}

TEST_CASE("shipped reference file matches the built-in scenario") {
  CHECK(nlad::load_config(std::string(NLAD_SOURCE_DIR) + "/configs/default.cfg") ==
        nlad::default_scenario());
  CHECK_THROWS_AS(nlad::load_config("/nonexistent/nlad.cfg"), nlad::IoError);
}

TEST_CASE("load profiles modulate time as documented") {
  SolverConfig c = nlad::default_scenario();
  CHECK(c.load_scale(0.0) == 1.0);
  CHECK(c.load_scale(17.3) == 1.0);

  c.profile = LoadProfile::Ramp;
  c.t_ramp = 0.4;
  CHECK(c.load_scale(0.1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.load_scale(0.4) == 1.0);
  CHECK(c.load_scale(2.0) == 1.0);

  c.profile = LoadProfile::Sine;
  c.period = 1.0;
  CHECK(c.load_scale(0.25) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.load_scale(0.5) == doctest::Approx(0.0).epsilon(1e-12));
}
