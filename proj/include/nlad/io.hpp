#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlad/coupler.hpp"
#include "nlad/diagnostics.hpp"
#include "nlad/mesh.hpp"

namespace nlad {

inline constexpr const char* kToolVersion = "nlad 1.0.0";

// 64-bit FNV-1a over raw bytes; the checksum recorded in run manifests.
std::uint64_t fnv1a64(const std::string& bytes);

// Zero-padded lowercase hex, 16 digits.
std::string checksum_hex(std::uint64_t value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// timeseries.csv: fixed 21-column header plus one row per time level.
// Floats carry 17 significant digits, so parsing recovers the exact doubles
// and two runs of the same scenario compare byte for byte.
std::string timeseries_csv(const std::vector<StepRecord>& records);
std::vector<StepRecord> parse_timeseries(const std::string& text);

// Nodal snapshots, one node per line: damage as (arclength, value) along the
// contact edge, displacement as (x, y, ux, uy) over the whole mesh.
std::string chi_snapshot(const Mesh& mesh, const Eigen::VectorXd& chi);
std::string u_snapshot(const Mesh& mesh, const Eigen::VectorXd& u);
Eigen::MatrixX2d parse_chi_snapshot(const std::string& text);
Eigen::MatrixX4d parse_u_snapshot(const std::string& text);

// Columns 2..3 of a parsed displacement snapshot back in dof order.
Eigen::VectorXd snapshot_to_dofs(const Eigen::MatrixX4d& table);

// Checkpoint: header "t num_nodes num_contact", then one line (ux, uy) per
// mesh node, then one damage value per contact node.  Numbers round-trip
// exactly, so a restarted run reproduces the original bit for bit.
std::string checkpoint_text(const State& state, const Mesh& mesh);
State parse_checkpoint(const std::string& text);

// Everything needed to audit a run directory: the tool that wrote it, the
// fully resolved configuration, and a checksum per emitted file.
struct RunManifest {
  std::string tool_version;
  std::string config_echo;
  std::vector<std::pair<std::string, std::uint64_t>> files;

  bool operator==(const RunManifest&) const = default;
};
std::string manifest_text(const RunManifest& manifest);
RunManifest parse_manifest(const std::string& text);

// Snapshot cadence: step 0, every `every` steps, and the final step; a zero
// cadence disables snapshots entirely.
bool snapshot_due(int step, int num_steps, int every);

// Writes config.cfg, timeseries.csv, the due snapshots, checkpoint.txt, and
// manifest.txt into dir (created if missing); returns the manifest.
RunManifest write_run(const std::string& dir, const System& sys, const RunResult& result);

}  // namespace nlad
