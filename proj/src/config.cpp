#include "nlad/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "nlad/errors.hpp"
#include "nlad/format.hpp"

namespace nlad {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Entries = std::map<std::string, Entry>;

[[noreturn]] void invalid(const std::string& key, int line, const std::string& msg) {
  throw ConfigError(ConfigError::Kind::InvalidValue, key,
                    "line " + std::to_string(line) + ": " + msg);
}

Entries tokenize(const std::string& text) {
  Entries entries;
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      invalid("line " + std::to_string(line), line, "expected key = value, got '" + content + "'");
    }
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) invalid("line " + std::to_string(line), line, "empty key");
    if (value.empty()) invalid(key, line, "empty value");
    const auto [it, inserted] = entries.emplace(key, Entry{value, line});
    if (!inserted) {
      invalid(key, line, "duplicate key, first defined on line " + std::to_string(it->second.line));
    }
  }
  return entries;
}

class Reader {
 public:
  explicit Reader(Entries entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  Entry take_required(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ConfigError(ConfigError::Kind::MissingKey, key, "required key absent");
    }
    Entry entry = it->second;
    entries_.erase(it);
    return entry;
  }

  double required_double(const std::string& key) {
    const Entry entry = take_required(key);
    return to_double(key, entry);
  }

  int required_int(const std::string& key) {
    const Entry entry = take_required(key);
    return to_int(key, entry);
  }

  std::string required_word(const std::string& key) { return take_required(key).value; }

  double defaulted_double(const std::string& key, double fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const Entry entry = it->second;
    entries_.erase(it);
    return to_double(key, entry);
  }

  int defaulted_int(const std::string& key, int fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const Entry entry = it->second;
    entries_.erase(it);
    return to_int(key, entry);
  }

  std::string defaulted_word(const std::string& key, const std::string& fallback) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    const std::string value = it->second.value;
    entries_.erase(it);
    return value;
  }

  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  // Rejects a conditional key that does not apply to the selected variant.
  void forbid(const std::string& key, const std::string& why) const {
    const auto it = entries_.find(key);
    if (it != entries_.end()) invalid(key, it->second.line, why);
  }

  void finish() const {
    if (entries_.empty()) return;
    // Report the earliest leftover by line so the message points at the file.
    const Entry* first = nullptr;
    const std::string* key = nullptr;
    for (const auto& [k, entry] : entries_) {
      if (first == nullptr || entry.line < first->line) {
        first = &entry;
        key = &k;
      }
    }
    throw ConfigError(ConfigError::Kind::UnknownKey, *key,
                      "line " + std::to_string(first->line));
  }

  static double to_double(const std::string& key, const Entry& entry) {
    try {
      size_t pos = 0;
      const double v = std::stod(entry.value, &pos);
      if (pos != entry.value.size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (...) {
      invalid(key, entry.line, "expected a finite number, got '" + entry.value + "'");
    }
  }

  static int to_int(const std::string& key, const Entry& entry) {
    try {
      size_t pos = 0;
      const int v = std::stoi(entry.value, &pos);
      if (pos != entry.value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      invalid(key, entry.line, "expected an integer, got '" + entry.value + "'");
    }
  }

 private:
  Entries entries_;
};

void check(bool ok, const std::string& key, const std::string& msg) {
  if (!ok) throw ConfigError(ConfigError::Kind::InvalidValue, key, msg);
}

}  // namespace

double SolverConfig::load_scale(double t) const {
  switch (profile) {
    case LoadProfile::Constant: return 1.0;
    case LoadProfile::Ramp: return t >= t_ramp ? 1.0 : t / t_ramp;
    case LoadProfile::Sine: return std::sin(2.0 * kPi * t / period);
  }
  return 1.0;
}

SolverConfig parse_config(const std::string& text) {
  Reader reader(tokenize(text));
  SolverConfig c;

  c.nx = reader.required_int("mesh.nx");
  c.ny = reader.required_int("mesh.ny");

  c.lambda = reader.required_double("material.lambda");
  c.mu = reader.required_double("material.mu");
  c.lambda_v = reader.required_double("material.lambda_v");
  c.mu_v = reader.required_double("material.mu_v");

  {
    const int line = reader.line_of("kernel.kind");
    const std::string kind = reader.required_word("kernel.kind");
    if (kind == "constant") {
      c.kernel_kind = KernelKind::Constant;
      c.kernel_k0 = reader.required_double("kernel.k0");
      reader.forbid("kernel.d", "only valid for kernel.kind = elongation");
    } else if (kind == "elongation") {
      c.kernel_kind = KernelKind::Elongation;
      c.kernel_d = reader.required_double("kernel.d");
      reader.forbid("kernel.k0", "only valid for kernel.kind = constant");
    } else {
      invalid("kernel.kind", line, "expected constant or elongation, got '" + kind + "'");
    }
  }

  c.c0 = reader.required_double("cohesion.c0");
  c.c1 = reader.required_double("cohesion.c1");
  c.c2 = reader.required_double("cohesion.c2");

  c.fx = reader.required_double("load.fx");
  c.fy = reader.required_double("load.fy");
  c.gx = reader.defaulted_double("load.gx", 0.0);
  c.gy = reader.defaulted_double("load.gy", 0.0);
  {
    const int line = reader.line_of("load.profile");
    const std::string profile = reader.defaulted_word("load.profile", "constant");
    if (profile == "constant") {
      c.profile = LoadProfile::Constant;
      reader.forbid("load.t_ramp", "only valid for load.profile = ramp");
      reader.forbid("load.period", "only valid for load.profile = sine");
    } else if (profile == "ramp") {
      c.profile = LoadProfile::Ramp;
      c.t_ramp = reader.required_double("load.t_ramp");
      reader.forbid("load.period", "only valid for load.profile = sine");
    } else if (profile == "sine") {
      c.profile = LoadProfile::Sine;
      c.period = reader.required_double("load.period");
      reader.forbid("load.t_ramp", "only valid for load.profile = ramp");
    } else {
      invalid("load.profile", line, "expected constant, ramp, or sine, got '" + profile + "'");
    }
  }

  c.dt = reader.required_double("time.dt");
  c.t_final = reader.required_double("time.t_final");

  c.eps = reader.required_double("regularization.eps");
  c.eps_u = reader.required_double("regularization.eps_u");

  {
    const Entry entry = reader.take_required("fixed_point.tol");
    c.tol_fp = entry.value == "inf" ? std::numeric_limits<double>::infinity()
                                    : Reader::to_double("fixed_point.tol", entry);
  }
  c.theta = reader.defaulted_double("fixed_point.theta", 1.0);
  c.max_fp_iters = reader.defaulted_int("fixed_point.max_iters", 200);

  c.momentum_max_newton = reader.defaulted_int("momentum.max_newton", 50);
  c.momentum_tol = reader.defaulted_double("momentum.tol", 1e-10);
  c.momentum_max_cg = reader.defaulted_int("momentum.max_cg", 50000);
  c.flow_max_newton = reader.defaulted_int("flow.max_newton", 100);
  c.flow_tol = reader.defaulted_double("flow.tol", 1e-9);

  c.chi0 = reader.required_double("init.chi_value");
  c.snapshot_every = reader.defaulted_int("output.snapshot_every", 10);

  reader.finish();

  check(c.nx >= 2, "mesh.nx", "must be at least 2");
  check(c.ny >= 2, "mesh.ny", "must be at least 2");
  check(c.mu > 0.0, "material.mu", "must be positive");
  check(c.mu_v > 0.0, "material.mu_v", "must be positive");
  check(c.lambda >= 0.0, "material.lambda", "must be nonnegative");
  check(c.lambda_v >= 0.0, "material.lambda_v", "must be nonnegative");
  if (c.kernel_kind == KernelKind::Constant) {
    check(c.kernel_k0 >= 0.0, "kernel.k0", "must be nonnegative");
  } else {
    check(c.kernel_d > 0.0, "kernel.d", "must be positive");
  }
  if (c.profile == LoadProfile::Ramp) check(c.t_ramp > 0.0, "load.t_ramp", "must be positive");
  if (c.profile == LoadProfile::Sine) check(c.period > 0.0, "load.period", "must be positive");
  check(c.dt > 0.0, "time.dt", "must be positive");
  check(c.t_final >= 0.0, "time.t_final", "must be nonnegative");
  check(c.eps > 0.0, "regularization.eps", "must be positive");
  check(c.eps_u > 0.0, "regularization.eps_u", "must be positive");
  check(c.tol_fp > 0.0, "fixed_point.tol", "must be positive or inf");
  check(c.theta > 0.0 && c.theta <= 1.0, "fixed_point.theta", "must lie in (0, 1]");
  check(c.max_fp_iters >= 1, "fixed_point.max_iters", "must be at least 1");
  check(c.momentum_max_newton >= 1, "momentum.max_newton", "must be at least 1");
  check(c.momentum_tol > 0.0, "momentum.tol", "must be positive");
  check(c.momentum_max_cg >= 1, "momentum.max_cg", "must be at least 1");
  check(c.flow_max_newton >= 1, "flow.max_newton", "must be at least 1");
  check(c.flow_tol > 0.0, "flow.tol", "must be positive");
  check(c.chi0 >= 0.0 && c.chi0 <= 1.0, "init.chi_value", "must lie in [0, 1]");
  check(c.snapshot_every >= 0, "output.snapshot_every", "must be nonnegative");
  return c;
}

SolverConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string emit_config(const SolverConfig& c) {
  std::ostringstream out;
  const auto put = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  const auto put_d = [&put](const std::string& key, double v) { put(key, format_g17(v)); };
  const auto put_i = [&put](const std::string& key, int v) { put(key, std::to_string(v)); };

  put_i("mesh.nx", c.nx);
  put_i("mesh.ny", c.ny);
  put_d("material.lambda", c.lambda);
  put_d("material.mu", c.mu);
  put_d("material.lambda_v", c.lambda_v);
  put_d("material.mu_v", c.mu_v);
  if (c.kernel_kind == KernelKind::Constant) {
    put("kernel.kind", "constant");
    put_d("kernel.k0", c.kernel_k0);
  } else {
    put("kernel.kind", "elongation");
    put_d("kernel.d", c.kernel_d);
  }
  put_d("cohesion.c0", c.c0);
  put_d("cohesion.c1", c.c1);
  put_d("cohesion.c2", c.c2);
  put_d("load.fx", c.fx);
  put_d("load.fy", c.fy);
  put_d("load.gx", c.gx);
  put_d("load.gy", c.gy);
  switch (c.profile) {
    case LoadProfile::Constant:
      put("load.profile", "constant");
      break;
    case LoadProfile::Ramp:
      put("load.profile", "ramp");
      put_d("load.t_ramp", c.t_ramp);
      break;
    case LoadProfile::Sine:
      put("load.profile", "sine");
      put_d("load.period", c.period);
      break;
  }
  put_d("time.dt", c.dt);
  put_d("time.t_final", c.t_final);
  put_d("regularization.eps", c.eps);
  put_d("regularization.eps_u", c.eps_u);
  put("fixed_point.tol", std::isinf(c.tol_fp) ? "inf" : format_g17(c.tol_fp));
  put_d("fixed_point.theta", c.theta);
  put_i("fixed_point.max_iters", c.max_fp_iters);
  put_i("momentum.max_newton", c.momentum_max_newton);
  put_d("momentum.tol", c.momentum_tol);
  put_i("momentum.max_cg", c.momentum_max_cg);
  put_i("flow.max_newton", c.flow_max_newton);
  put_d("flow.tol", c.flow_tol);
  put_d("init.chi_value", c.chi0);
  put_i("output.snapshot_every", c.snapshot_every);
  return out.str();
}

SolverConfig default_scenario() {
  SolverConfig c;
  c.nx = 16;
  c.ny = 16;
  c.lambda = 1.0;
  c.mu = 1.0;
  c.lambda_v = 0.5;
  c.mu_v = 0.5;
  c.kernel_kind = KernelKind::Elongation;
  c.kernel_d = 0.5;
  c.c0 = 0.1;
  c.c1 = -0.1;
  c.c2 = 0.0;
  c.fx = 0.0;
  c.fy = -0.5;
  c.dt = 1e-2;
  c.t_final = 1.0;
  c.eps = 1e-3;
  c.eps_u = 1e-4;
  c.tol_fp = 1e-8;
  c.chi0 = 1.0;
  return c;
}

}  // namespace nlad
