#include "nlad/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlad/config.hpp"
#include "nlad/errors.hpp"
#include "nlad/format.hpp"

namespace nlad {

namespace {

constexpr const char* kCsvHeader =
    "t,E_total,E1_elastic,E1_contact,E2_local,E2_nonlocal,E2_gradient,E2_beta,E2_gamma,"
    "R_u,R_chi,rho_term,work,enid_residual,min_chi,max_chi,max_increment,max_penetration,"
    "fp_iters,newton_iters_u,newton_iters_chi";

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    if (end == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

// Whitespace-separated tokens, any run of blanks as one separator.
std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

[[noreturn]] void fail(const std::string& where, int line, const std::string& what) {
  throw IoError(where + ": line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& token, const std::string& where, int line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    fail(where, line, "not a finite number: '" + token + "'");
  }
  return value;
}

int parse_int(const std::string& token, const std::string& where, int line) {
  int value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    fail(where, line, "not an integer: '" + token + "'");
  }
  return value;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string checksum_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out.good()) throw IoError("write failure on " + path);
}

std::string timeseries_csv(const std::vector<StepRecord>& records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const StepRecord& r : records) {
    const EnergyBreakdown& e = r.energy;
    for (const double v : {r.t, e.total(), e.elastic, e.contact, e.local, e.nonlocal, e.gradient,
                           e.beta, e.gamma, r.r_u, r.r_chi, r.rho_term, r.work, r.residual,
                           r.min_chi, r.max_chi, r.max_increment, r.max_penetration}) {
      out += format_g17(v);
      out += ',';
    }
    out += std::to_string(r.fp_iters);
    out += ',';
    out += std::to_string(r.newton_u);
    out += ',';
    out += std::to_string(r.newton_chi);
    out += '\n';
  }
  return out;
}

std::vector<StepRecord> parse_timeseries(const std::string& text) {
  const std::string where = "timeseries";
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != kCsvHeader) fail(where, 1, "unexpected header");
  std::vector<StepRecord> records;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const int line = static_cast<int>(k) + 1;
    const auto fields = split_fields(lines[k], ',');
    if (fields.size() != 21) {
      fail(where, line, "expected 21 fields, got " + std::to_string(fields.size()));
    }
    double v[18];
    for (int i = 0; i < 18; ++i) v[i] = parse_double(fields[i], where, line);
    StepRecord r;
    r.t = v[0];
    r.energy.elastic = v[2];
    r.energy.contact = v[3];
    r.energy.local = v[4];
    r.energy.nonlocal = v[5];
    r.energy.gradient = v[6];
    r.energy.beta = v[7];
    r.energy.gamma = v[8];
    if (v[1] != r.energy.total()) fail(where, line, "E_total does not equal the sum of its parts");
    r.r_u = v[9];
    r.r_chi = v[10];
    r.rho_term = v[11];
    r.work = v[12];
    r.residual = v[13];
    r.min_chi = v[14];
    r.max_chi = v[15];
    r.max_increment = v[16];
    r.max_penetration = v[17];
    r.fp_iters = parse_int(fields[18], where, line);
    r.newton_u = parse_int(fields[19], where, line);
    r.newton_chi = parse_int(fields[20], where, line);
    records.push_back(r);
  }
  return records;
}

std::string chi_snapshot(const Mesh& mesh, const Eigen::VectorXd& chi) {
  if (chi.size() != mesh.num_contact()) throw IoError("chi snapshot: field size mismatch");
  std::string out;
  for (int c = 0; c < mesh.num_contact(); ++c) {
    out += format_g17(mesh.contact_arclength[c]);
    out += ' ';
    out += format_g17(chi[c]);
    out += '\n';
  }
  return out;
}

std::string u_snapshot(const Mesh& mesh, const Eigen::VectorXd& u) {
  if (u.size() != 2 * mesh.num_nodes()) throw IoError("u snapshot: field size mismatch");
  std::string out;
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    out += format_g17(mesh.nodes(n, 0));
    out += ' ';
    out += format_g17(mesh.nodes(n, 1));
    out += ' ';
    out += format_g17(u[2 * n]);
    out += ' ';
    out += format_g17(u[2 * n + 1]);
    out += '\n';
  }
  return out;
}

namespace {

Eigen::MatrixXd parse_table(const std::string& text, int cols, const std::string& where) {
  const auto lines = split_lines(text);
  Eigen::MatrixXd table(static_cast<Eigen::Index>(lines.size()), cols);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const int line = static_cast<int>(k) + 1;
    const auto tokens = split_tokens(lines[k]);
    if (static_cast<int>(tokens.size()) != cols) {
      fail(where, line, "expected " + std::to_string(cols) + " columns, got " +
                            std::to_string(tokens.size()));
    }
    for (int i = 0; i < cols; ++i) {
      table(static_cast<Eigen::Index>(k), i) = parse_double(tokens[i], where, line);
    }
  }
  return table;
}

}  // namespace

Eigen::MatrixX2d parse_chi_snapshot(const std::string& text) {
  return parse_table(text, 2, "chi snapshot");
}

Eigen::MatrixX4d parse_u_snapshot(const std::string& text) {
  return parse_table(text, 4, "u snapshot");
}

Eigen::VectorXd snapshot_to_dofs(const Eigen::MatrixX4d& table) {
  Eigen::VectorXd u(2 * table.rows());
  for (Eigen::Index n = 0; n < table.rows(); ++n) {
    u[2 * n] = table(n, 2);
    u[2 * n + 1] = table(n, 3);
  }
  return u;
}

std::string checkpoint_text(const State& state, const Mesh& mesh) {
  if (state.u.size() != 2 * mesh.num_nodes() || state.chi.size() != mesh.num_contact()) {
    throw IoError("checkpoint: field sizes do not match the mesh");
  }
  std::string out = format_g17(state.t);
  out += ' ';
  out += std::to_string(mesh.num_nodes());
  out += ' ';
  out += std::to_string(mesh.num_contact());
  out += '\n';
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    out += format_g17(state.u[2 * n]);
    out += ' ';
    out += format_g17(state.u[2 * n + 1]);
    out += '\n';
  }
  for (int c = 0; c < mesh.num_contact(); ++c) {
    out += format_g17(state.chi[c]);
    out += '\n';
  }
  return out;
}

State parse_checkpoint(const std::string& text) {
  const std::string where = "checkpoint";
  const auto lines = split_lines(text);
  if (lines.empty()) fail(where, 1, "empty file");
  const auto header = split_tokens(lines[0]);
  if (header.size() != 3) fail(where, 1, "header must be: time num_nodes num_contact");
  State state;
  state.t = parse_double(header[0], where, 1);
  const int num_nodes = parse_int(header[1], where, 1);
  const int num_contact = parse_int(header[2], where, 1);
  if (num_nodes <= 0 || num_contact <= 0) fail(where, 1, "node counts must be positive");
  if (static_cast<int>(lines.size()) != 1 + num_nodes + num_contact) {
    fail(where, static_cast<int>(lines.size()),
         "expected " + std::to_string(1 + num_nodes + num_contact) + " lines, got " +
             std::to_string(lines.size()));
  }
  state.u.resize(2 * num_nodes);
  for (int n = 0; n < num_nodes; ++n) {
    const int line = 2 + n;
    const auto tokens = split_tokens(lines[1 + n]);
    if (tokens.size() != 2) fail(where, line, "expected ux uy");
    state.u[2 * n] = parse_double(tokens[0], where, line);
    state.u[2 * n + 1] = parse_double(tokens[1], where, line);
  }
  state.chi.resize(num_contact);
  for (int c = 0; c < num_contact; ++c) {
    const int line = 2 + num_nodes + c;
    const auto tokens = split_tokens(lines[1 + num_nodes + c]);
    if (tokens.size() != 1) fail(where, line, "expected a single damage value");
    state.chi[c] = parse_double(tokens[0], where, line);
  }
  return state;
}

std::string manifest_text(const RunManifest& manifest) {
  std::string out = "tool = ";
  out += manifest.tool_version;
  out += "\nconfig-begin\n";
  out += manifest.config_echo;
  if (!manifest.config_echo.empty() && manifest.config_echo.back() != '\n') out += '\n';
  out += "config-end\nfiles-begin\n";
  for (const auto& [name, checksum] : manifest.files) {
    out += checksum_hex(checksum);
    out += "  ";
    out += name;
    out += '\n';
  }
  out += "files-end\n";
  return out;
}

RunManifest parse_manifest(const std::string& text) {
  const std::string where = "manifest";
  const auto lines = split_lines(text);
  std::size_t k = 0;
  const auto expect = [&](const std::string& what) {
    if (k >= lines.size() || lines[k] != what) {
      fail(where, static_cast<int>(k) + 1, "expected '" + what + "'");
    }
    ++k;
  };
  RunManifest manifest;
  if (lines.empty() || lines[0].rfind("tool = ", 0) != 0) fail(where, 1, "expected 'tool = ...'");
  manifest.tool_version = lines[0].substr(7);
  k = 1;
  expect("config-begin");
  while (k < lines.size() && lines[k] != "config-end") {
    manifest.config_echo += lines[k];
    manifest.config_echo += '\n';
    ++k;
  }
  expect("config-end");
  expect("files-begin");
  while (k < lines.size() && lines[k] != "files-end") {
    const int line = static_cast<int>(k) + 1;
    const auto tokens = split_tokens(lines[k]);
    if (tokens.size() != 2 || tokens[0].size() != 16 ||
        tokens[0].find_first_not_of("0123456789abcdef") != std::string::npos) {
      fail(where, line, "expected '<16 hex digits>  <file>'");
    }
    std::uint64_t checksum = 0;
    for (const char c : tokens[0]) {
      checksum = (checksum << 4) | static_cast<std::uint64_t>(c <= '9' ? c - '0' : c - 'a' + 10);
    }
    manifest.files.emplace_back(tokens[1], checksum);
    ++k;
  }
  expect("files-end");
  if (k != lines.size()) fail(where, static_cast<int>(k) + 1, "trailing content");
  return manifest;
}

bool snapshot_due(int step, int num_steps, int every) {
  if (every <= 0) return false;
  return step % every == 0 || step == num_steps;
}

RunManifest write_run(const std::string& dir, const System& sys, const RunResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir), ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  if (result.records.empty()) throw IoError("write_run: empty trajectory");

  RunManifest manifest{kToolVersion, emit_config(sys.config), {}};
  const auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file((fs::path(dir) / name).string(), content);
    manifest.files.emplace_back(name, fnv1a64(content));
  };

  emit("config.cfg", manifest.config_echo);
  emit("timeseries.csv", timeseries_csv(result.records));
  const int num_steps = static_cast<int>(result.records.size()) - 1;
  for (int step = 0; step <= num_steps; ++step) {
    if (!snapshot_due(step, num_steps, sys.config.snapshot_every)) continue;
    emit("chi_" + std::to_string(step) + ".txt", chi_snapshot(sys.mesh, result.chi_history[step]));
    emit("u_" + std::to_string(step) + ".txt", u_snapshot(sys.mesh, result.u_history[step]));
  }
  emit("checkpoint.txt", checkpoint_text(result.final_state, sys.mesh));
  write_text_file((fs::path(dir) / "manifest.txt").string(), manifest_text(manifest));
  return manifest;
}

}  // namespace nlad
