#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "nlad/config.hpp"
#include "nlad/coupler.hpp"
#include "nlad/diagnostics.hpp"
#include "nlad/errors.hpp"
#include "nlad/format.hpp"
#include "nlad/io.hpp"
#include "nlad/mesh.hpp"

namespace fs = std::filesystem;

using namespace nlad;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const SolverConfig config = load_config(config_path);
  const System sys(config);
  const RunResult result = run_simulation(sys);
  const RunManifest manifest = write_run(out_dir, sys, result);
  std::cout << "wrote " << out_dir << ": " << result.records.size() - 1 << " steps, "
            << manifest.files.size() + 1 << " files, final energy "
            << format_g17(result.records.back().energy.total()) << "\n";
  return 0;
}

int cmd_eps_study(const std::string& config_path, const std::vector<double>& eps_list,
                  const std::string& out_dir) {
  const SolverConfig base = load_config(config_path);
  const EpsilonStudy study = epsilon_continuation(base, eps_list);

  std::error_code ec;
  fs::create_directories(fs::path(out_dir), ec);
  if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

  for (std::size_t k = 0; k < study.eps_values.size(); ++k) {
    SolverConfig member = base;
    member.eps = study.eps_values[k];
    const System sys(member);
    char label[40];
    std::snprintf(label, sizeof label, "eps_%g", study.eps_values[k]);
    write_run((fs::path(out_dir) / label).string(), sys, study.runs[k]);
  }

  std::string csv =
      "eps_coarse,eps_fine,chi_distance_l2,u_distance_h1,fp_iters_coarse,fp_iters_fine\n";
  for (std::size_t k = 0; k + 1 < study.eps_values.size(); ++k) {
    csv += format_g17(study.eps_values[k]);
    csv += ',';
    csv += format_g17(study.eps_values[k + 1]);
    csv += ',';
    csv += format_g17(study.consecutive[k].l2_l2);
    csv += ',';
    csv += format_g17(study.consecutive[k].l2_h1);
    csv += ',';
    csv += std::to_string(study.runs[k].total_fp_iters());
    csv += ',';
    csv += std::to_string(study.runs[k + 1].total_fp_iters());
    csv += '\n';
  }
  write_text_file((fs::path(out_dir) / "study.csv").string(), csv);
  std::cout << "wrote " << out_dir << ": " << study.eps_values.size() << " runs, "
            << study.consecutive.size() << " distance rows\n";
  return 0;
}

std::string brief(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", value);
  return buffer;
}

// Audits a run directory: integrity of every emitted file, bit-exact
// reproducibility of the recorded diagnostics from the snapshots, and the
// dissipation/confinement bounds the scheme promises.
int cmd_check(const std::string& dir_str) {
  const fs::path dir(dir_str);

  struct Row {
    std::string name;
    bool ok;
    std::string note;
  };
  std::vector<Row> table;
  const auto add = [&table](const std::string& name, bool ok, const std::string& note) {
    table.push_back({name, ok, note});
  };
  const auto finish = [&table]() {
    int fails = 0;
    for (const Row& row : table) {
      std::printf("%-18s %-5s %s\n", row.name.c_str(), row.ok ? "ok" : "FAIL", row.note.c_str());
      if (!row.ok) ++fails;
    }
    std::printf("%d of %zu checks failed\n", fails, table.size());
    return fails == 0 ? 0 : 1;
  };

  // Manifest and checksums.
  RunManifest manifest;
  bool have_manifest = false;
  try {
    manifest = parse_manifest(read_text_file((dir / "manifest.txt").string()));
    have_manifest = true;
    std::string bad;
    for (const auto& [name, checksum] : manifest.files) {
      if (fnv1a64(read_text_file((dir / name).string())) != checksum) {
        bad = name;
        break;
      }
    }
    add("manifest", bad.empty(),
        bad.empty() ? std::to_string(manifest.files.size()) + " files verified"
                    : "checksum mismatch on " + bad);
  } catch (const std::exception& e) {
    add("manifest", false, e.what());
  }

  // Configuration, cross-checked against the manifest echo.
  SolverConfig config;
  try {
    config = load_config((dir / "config.cfg").string());
    if (have_manifest && !(parse_config(manifest.config_echo) == config)) {
      add("config", false, "manifest echo disagrees with config.cfg");
    } else {
      add("config", true, "");
    }
  } catch (const std::exception& e) {
    add("config", false, e.what());
    return finish();
  }

  const int steps = static_cast<int>(std::llround(config.t_final / config.dt));

  // Time series: row count, grid, exact E_total consistency via the parser.
  std::vector<StepRecord> records;
  bool have_records = false;
  try {
    records = parse_timeseries(read_text_file((dir / "timeseries.csv").string()));
    bool ok = static_cast<int>(records.size()) == steps + 1;
    std::string note = std::to_string(records.size()) + " rows";
    if (!ok) {
      note = "expected " + std::to_string(steps + 1) + " rows, got " +
             std::to_string(records.size());
    } else {
      for (int k = 0; k <= steps; ++k) {
        if (records[k].t != 0.0 + k * config.dt) {
          ok = false;
          note = "time grid mismatch at row " + std::to_string(k + 2);
          break;
        }
      }
    }
    have_records = ok;
    add("timeseries", ok, note);
  } catch (const std::exception& e) {
    add("timeseries", false, e.what());
  }

  // Snapshots: shape and coordinates, then diagnostics recomputed from the
  // stored fields; both must reproduce the run bit for bit.
  const System sys(config);
  bool snaps_ok = true;
  std::string snaps_note;
  bool energies_ok = true;
  std::string energies_note;
  int checked = 0;
  double snap_min_chi = 1.0;
  double snap_max_chi = 0.0;
  State last_snapshot;
  for (int step = 0; step <= steps && snaps_ok; ++step) {
    if (!snapshot_due(step, steps, config.snapshot_every)) continue;
    try {
      const auto chi_table =
          parse_chi_snapshot(read_text_file((dir / ("chi_" + std::to_string(step) + ".txt")).string()));
      const auto u_table =
          parse_u_snapshot(read_text_file((dir / ("u_" + std::to_string(step) + ".txt")).string()));
      if (chi_table.rows() != sys.mesh.num_contact() || u_table.rows() != sys.mesh.num_nodes()) {
        snaps_ok = false;
        snaps_note = "step " + std::to_string(step) + ": node count mismatch";
        break;
      }
      if (!(chi_table.col(0).array() == sys.mesh.contact_arclength.array()).all() ||
          !(u_table.col(0).array() == sys.mesh.nodes.col(0).array()).all() ||
          !(u_table.col(1).array() == sys.mesh.nodes.col(1).array()).all()) {
        snaps_ok = false;
        snaps_note = "step " + std::to_string(step) + ": coordinates do not match the mesh";
        break;
      }
      const Eigen::VectorXd chi = chi_table.col(1);
      const Eigen::VectorXd u = snapshot_to_dofs(u_table);
      ++checked;
      snap_min_chi = std::min(snap_min_chi, chi.minCoeff());
      snap_max_chi = std::max(snap_max_chi, chi.maxCoeff());
      last_snapshot = State{0.0 + step * config.dt, u, chi};

      if (energies_ok && have_records) {
        const EnergyBreakdown e = sys.energy(u, chi);
        const StepRecord& r = records[step];
        const bool same = e.elastic == r.energy.elastic && e.contact == r.energy.contact &&
                          e.local == r.energy.local && e.nonlocal == r.energy.nonlocal &&
                          e.gradient == r.energy.gradient && e.beta == r.energy.beta &&
                          e.gamma == r.energy.gamma && chi.minCoeff() == r.min_chi &&
                          chi.maxCoeff() == r.max_chi &&
                          std::max(normal_trace(sys.mesh, u).maxCoeff(), 0.0) == r.max_penetration;
        if (!same) {
          energies_ok = false;
          energies_note = "step " + std::to_string(step) + ": recomputed diagnostics differ";
        }
      }
    } catch (const std::exception& e) {
      snaps_ok = false;
      snaps_note = e.what();
    }
  }
  add("snapshots", snaps_ok, snaps_ok ? std::to_string(checked) + " checked" : snaps_note);
  add("energies", energies_ok, energies_note);

  if (have_records) {
    const double slack = 10.0 * config.eps;

    const double interval = max_positive_residual(records);
    const double window = window_violation(records);
    add("energy-identity", interval <= 1e-3 && window <= 1e-3,
        "max interval " + brief(interval) + ", window " + brief(window));

    const ConfinementCheck confinement = check_confinement(records);
    const double below = std::max(confinement.below, -snap_min_chi);
    const double above = std::max(confinement.above, snap_max_chi - 1.0);
    add("confinement", below <= slack && above <= slack,
        "below " + brief(below) + ", above " + brief(above));

    const double increment = max_upward_increment(records);
    add("unidirectionality", increment <= slack, "max increment " + brief(increment));
  }

  try {
    const State state = parse_checkpoint(read_text_file((dir / "checkpoint.txt").string()));
    bool ok = state.t == 0.0 + steps * config.dt && state.u.size() == 2 * sys.mesh.num_nodes() &&
              state.chi.size() == sys.mesh.num_contact();
    std::string note;
    if (!ok) note = "terminal time or field sizes disagree with the configuration";
    if (ok && checked > 0) {
      ok = (state.u.array() == last_snapshot.u.array()).all() &&
           (state.chi.array() == last_snapshot.chi.array()).all();
      if (!ok) note = "checkpoint disagrees with the final snapshot";
    }
    add("checkpoint", ok, note);
  } catch (const std::exception& e) {
    add("checkpoint", false, e.what());
  }

  return finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasistatic adhesive-contact simulator with nonlocal surface damage"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string check_dir;
  std::vector<double> eps_list;

  CLI::App* run = app.add_subcommand("run", "integrate one scenario and write its artifacts");
  run->add_option("--config", config_path, "configuration file")->required();
  run->add_option("--out", out_dir, "output directory")->required();

  CLI::App* study = app.add_subcommand("eps-study", "rerun one scenario over a list of "
                                                    "regularization parameters");
  study->add_option("--config", config_path, "configuration file")->required();
  study->add_option("--eps", eps_list, "strictly decreasing Yosida parameters")
      ->required()
      ->delimiter(',');
  study->add_option("--out", out_dir, "output directory")->required();

  CLI::App* check = app.add_subcommand("check", "audit a run directory");
  check->add_option("--dir", check_dir, "directory written by run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (study->parsed()) return cmd_eps_study(config_path, eps_list, out_dir);
    return cmd_check(check_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
