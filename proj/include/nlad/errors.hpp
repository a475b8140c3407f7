#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlad {

// Configuration errors carry the offending key so callers can report it.
class ConfigError : public std::runtime_error {
 public:
  enum class Kind { MissingKey, InvalidValue, UnknownKey };

  ConfigError(Kind kind, std::string key, const std::string& detail)
      : std::runtime_error(label(kind) + ": " + key + (detail.empty() ? "" : " (" + detail + ")")),
        kind_(kind),
        key_(std::move(key)) {}

  Kind kind() const { return kind_; }
  const std::string& key() const { return key_; }

 private:
  static std::string label(Kind kind) {
    switch (kind) {
      case Kind::MissingKey: return "MissingKey";
      case Kind::InvalidValue: return "InvalidValue";
      case Kind::UnknownKey: return "UnknownKey";
    }
    return "ConfigError";
  }

  Kind kind_;
  std::string key_;
};

// An iterative solver ran out of its iteration budget.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& where, int iters, double residual)
      : std::runtime_error(where + ": no convergence after " + std::to_string(iters) +
                           " iterations, residual " + std::to_string(residual)),
        iters_(iters),
        residual_(residual) {}

  int iterations() const { return iters_; }
  double residual() const { return residual_; }

 private:
  int iters_;
  double residual_;
};

// The momentum linearization lost positive definiteness (invalid damage input).
class IndefiniteSystem : public std::runtime_error {
 public:
  explicit IndefiniteSystem(const std::string& detail)
      : std::runtime_error("indefinite system: " + detail) {}
};

// The per-step fixed-point iteration hit its cap; history holds the update norms.
class FixedPointDivergence : public std::runtime_error {
 public:
  FixedPointDivergence(std::vector<double> history, const std::string& detail)
      : std::runtime_error("fixed-point iteration failed: " + detail),
        history_(std::move(history)) {}

  const std::vector<double>& residual_history() const { return history_; }

 private:
  std::vector<double> history_;
};

// File-format and filesystem failures in the run/check front end.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& detail) : std::runtime_error(detail) {}
};

}  // namespace nlad
