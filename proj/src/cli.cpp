// Copyright 2026 The lgi-qutrit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lgi/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgi/parallel.hpp"
#include "lgi/pulse.hpp"
#include "lgi/report.hpp"
#include "lgi/shots.hpp"

namespace lgi {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

/// Failure that should end the command with a message and exit code 1.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& text, std::string_view whole) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(value)) {
    throw std::invalid_argument("not an angle: '" + std::string(whole) + "'");
  }
  return value;
}

/// Output files are staged under a temporary name and renamed together once
/// everything has been written, so a failed run leaves no partial set behind.
class StagedOutputs {
 public:
  ~StagedOutputs() {
    std::error_code ec;
    for (const auto& [tmp, final_path] : staged_) fs::remove(tmp, ec);
  }

  void add(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw CommandError("cannot write " + tmp.string());
    file << content;
    file.close();
    if (!file) throw CommandError("write failed for " + tmp.string());
    staged_.emplace_back(tmp, path);
  }

  void commit() {
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      fs::rename(tmp, final_path, ec);
      if (ec) throw CommandError("cannot move " + tmp.string() + " to " + final_path.string() + ": " + ec.message());
    }
    staged_.clear();
  }

 private:
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw CommandError("cannot create output directory " + dir.string());
}

std::string command_line(const std::vector<std::string>& args) {
  std::string line = "lgi_sim";
  for (const auto& a : args) line += " " + a;
  return line;
}

// --- sweep ----------------------------------------------------------------

struct SweepOptions {
  std::string config_path;
  std::string rule = "vonneumann";
  std::size_t points = 31;
  std::string range = "0:2pi";
  bool exact = false;
  std::uint64_t shots = 10000;
  double noise_init = NoiseModel{}.init_fidelity;
  double noise_op = NoiseModel{}.op_fidelity;
  double readout_flip = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir = "lgi_out";
  bool svg = false;
  std::size_t jobs = default_jobs();
};

struct SweepFlags {
  CLI::Option* rule = nullptr;
  CLI::Option* points = nullptr;
  CLI::Option* range = nullptr;
  CLI::Option* exact = nullptr;
  CLI::Option* shots = nullptr;
  CLI::Option* noise_init = nullptr;
  CLI::Option* noise_op = nullptr;
  CLI::Option* readout_flip = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* out_dir = nullptr;
  CLI::Option* svg = nullptr;
};

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(text, &used, 0);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw CommandError(std::string(source) + " is not an integer: '" + text + "'");
  return value;
}

/// Config file values first, then flags given on the command line, then the
/// LGI_SIM_SEED fallback for a seed that neither provides.
void merge_config(SweepOptions& opt, const SweepFlags& flags) {
  bool seed_given = flags.seed->count() > 0;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw CommandError("cannot read config " + opt.config_path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw CommandError("malformed config " + opt.config_path + ": " + e.what());
    }
    if (!doc.is_object()) throw CommandError("config must be a JSON object");
    static const std::vector<std::string> kKnown = {"rule",  "points", "range", "exact", "shots",
                                                    "noise", "seed",   "out",   "svg",   "jobs"};
    for (const auto& [key, value] : doc.items()) {
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        throw CommandError("unknown config key '" + key + "'");
      }
    }
    try {
      if (doc.contains("rule") && !flags.rule->count()) opt.rule = doc["rule"].get<std::string>();
      if (doc.contains("points") && !flags.points->count()) opt.points = doc["points"].get<std::size_t>();
      if (doc.contains("range") && !flags.range->count()) {
        const auto& r = doc["range"];
        if (r.is_string()) {
          opt.range = r.get<std::string>();
        } else if (r.is_array() && r.size() == 2) {
          auto end = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
          opt.range = end(r[0]) + ":" + end(r[1]);
        } else {
          throw CommandError("config 'range' must be \"a:b\" or a two-element array");
        }
      }
      if (doc.contains("exact") && !flags.exact->count() && !flags.shots->count()) opt.exact = doc["exact"].get<bool>();
      if (doc.contains("shots") && !flags.shots->count()) opt.shots = doc["shots"].get<std::uint64_t>();
      if (doc.contains("noise")) {
        const auto& n = doc["noise"];
        if (!n.is_object()) throw CommandError("config 'noise' must be an object");
        for (const auto& [key, value] : n.items()) {
          if (key != "init" && key != "op" && key != "readout_flip") throw CommandError("unknown noise key '" + key + "'");
        }
        if (n.contains("init") && !flags.noise_init->count()) opt.noise_init = n["init"].get<double>();
        if (n.contains("op") && !flags.noise_op->count()) opt.noise_op = n["op"].get<double>();
        if (n.contains("readout_flip") && !flags.readout_flip->count()) opt.readout_flip = n["readout_flip"].get<double>();
      }
      if (doc.contains("seed") && !seed_given) {
        opt.seed = doc["seed"].get<std::uint64_t>();
        seed_given = true;
      }
      if (doc.contains("out") && !flags.out_dir->count()) opt.out_dir = doc["out"].get<std::string>();
      if (doc.contains("svg") && !flags.svg->count()) opt.svg = doc["svg"].get<bool>();
      if (doc.contains("jobs")) opt.jobs = doc["jobs"].get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw CommandError("malformed config " + opt.config_path + ": " + e.what());
    }
  }
  if (!seed_given) {
    if (const char* env = std::getenv("LGI_SIM_SEED"); env != nullptr && *env != '\0') {
      opt.seed = parse_seed(env, "LGI_SIM_SEED");
    }
  }
}

int cmd_sweep(SweepOptions opt, const SweepFlags& flags, const std::vector<std::string>& args, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  merge_config(opt, flags);

  if (opt.points < 1) throw CommandError("--points must be >= 1");
  if (!opt.exact && opt.shots < 2) throw CommandError("--shots must be >= 2 to estimate an error bar");
  if (opt.jobs < 1) opt.jobs = 1;

  const UpdateRule rule = parse_update_rule(opt.rule);
  const auto [first, last] = parse_range(opt.range);
  ExperimentConfig config;
  config.rule = rule;
  config.tau_angles = linspace_angles(first, last, opt.points);
  config.shots = opt.shots;
  config.noise = NoiseModel{opt.noise_init, opt.noise_op, opt.readout_flip};
  config.seed = opt.seed;
  config.validate();

  const SweepResult result = opt.exact ? exact_sweep(rule, config.tau_angles, opt.jobs) : run_sweep(config, opt.jobs);

  const fs::path dir(opt.out_dir);
  ensure_directory(dir);
  const std::string stem = opt.exact ? "exact" : "sweep";
  const fs::path csv_path = dir / (stem + ".csv");
  const fs::path json_path = dir / (stem + ".json");
  const fs::path svg_path = dir / (stem + ".svg");
  const fs::path manifest_path = dir / "manifest.json";

  StagedOutputs staged;
  std::ostringstream csv;
  write_sweep_csv(csv, result);
  staged.add(csv_path, csv.str());
  staged.add(json_path, sweep_to_json(result).dump(2) + "\n");
  if (opt.svg) staged.add(svg_path, render_sweep_svg(result));

  ordered_json manifest;
  manifest["command"] = "sweep";
  manifest["argv"] = command_line(args);
  manifest["version"] = std::string(kToolVersion);
  ordered_json resolved;
  resolved["rule"] = std::string(to_string(rule));
  resolved["grid"] = {{"first", first}, {"last", last}, {"points", opt.points}};
  resolved["exact"] = opt.exact;
  if (opt.exact) {
    resolved["shots"] = nullptr;
  } else {
    resolved["shots"] = opt.shots;
  }
  resolved["noise"] = {{"init", config.noise.init_fidelity},
                       {"op", config.noise.op_fidelity},
                       {"readout_flip", config.noise.readout_flip}};
  resolved["seed"] = opt.seed;
  resolved["rabi_rad_per_s"] = kDefaultRabiFrequency;
  resolved["jobs"] = opt.jobs;
  manifest["config"] = resolved;
  ordered_json outputs = {{"csv", csv_path.string()}, {"json", json_path.string()}};
  if (opt.svg) outputs["svg"] = svg_path.string();
  manifest["outputs"] = outputs;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  manifest["wall_seconds"] = elapsed.count();
  staged.add(manifest_path, manifest.dump(2) + "\n");
  staged.commit();

  std::size_t best = 0;
  for (std::size_t k = 1; k < result.points.size(); ++k) {
    if (result.points[k].k3 > result.points[best].k3) best = k;
  }
  const auto& peak = result.points[best];
  char line[160];
  if (opt.exact) {
    std::snprintf(line, sizeof line, "max K3 = %.6f at tau_angle = %.6f (%.4f pi)\n", peak.k3, peak.tau_angle,
                  peak.tau_angle / std::numbers::pi);
  } else {
    std::snprintf(line, sizeof line, "max K3 = %.4f +- %.4f at tau_angle = %.6f (%.4f pi)\n", peak.k3, peak.std_error,
                  peak.tau_angle, peak.tau_angle / std::numbers::pi);
  }
  out << line << "wrote " << csv_path.string() << ", " << json_path.string();
  if (opt.svg) out << ", " << svg_path.string();
  out << ", " << manifest_path.string() << "\n";
  return 0;
}

// --- compile --------------------------------------------------------------

struct CompileOptions {
  std::string epsilon;
  std::string matrix_path;
  double rabi_hz = kDefaultRabiFrequency / (2.0 * std::numbers::pi);
  std::string out_path = "pulses.txt";
};

int cmd_compile(const CompileOptions& opt, const std::vector<std::string>& args, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  if (!(opt.rabi_hz > 0.0) || !std::isfinite(opt.rabi_hz)) throw CommandError("--rabi must be positive");
  const double rabi = 2.0 * std::numbers::pi * opt.rabi_hz;

  PulseSequence seq;
  ordered_json source;
  if (!opt.epsilon.empty()) {
    const double eps = parse_angle(opt.epsilon);
    seq = compile_precession(eps, rabi);
    source = {{"epsilon", eps}};
  } else {
    std::ifstream in(opt.matrix_path);
    if (!in) throw CommandError("cannot read matrix file " + opt.matrix_path);
    const ComplexMatrix u = read_matrix_file(in);
    if (!is_unitary(u, 1e-10)) throw CommandError("matrix in " + opt.matrix_path + " is not unitary");
    seq = compile_unitary(u, rabi);
    source = {{"matrix_file", opt.matrix_path}};
  }
  const double residual = max_abs_distance(reconstruct(seq), embed4(seq.target));

  const fs::path path(opt.out_path);
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  fs::path manifest_path = path;
  manifest_path += ".manifest.json";

  StagedOutputs staged;
  std::ostringstream body;
  write_pulse_file(body, seq);
  staged.add(path, body.str());

  ordered_json manifest;
  manifest["command"] = "compile";
  manifest["argv"] = command_line(args);
  manifest["version"] = std::string(kToolVersion);
  manifest["config"] = {{"source", source}, {"rabi_rad_per_s", rabi}};
  manifest["outputs"] = {{"pulses", path.string()}};
  manifest["pulses"] = seq.pulses.size();
  manifest["residual"] = residual;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  manifest["wall_seconds"] = elapsed.count();
  staged.add(manifest_path, manifest.dump(2) + "\n");
  staged.commit();

  char line[200];
  std::snprintf(line, sizeof line, "pulses: %zu\nresidual: %.3e\nduration: %.6e s\n", seq.pulses.size(), residual,
                seq.total_duration());
  out << line << "wrote " << path.string() << "\n";
  return 0;
}

// --- violation ------------------------------------------------------------

int cmd_violation(double k3, double std_error, double bound, std::ostream& out) {
  if (!(std_error > 0.0)) throw CommandError("--stderr must be > 0");
  char line[64];
  std::snprintf(line, sizeof line, "%.2fσ\n", sigma_violation(k3, std_error, bound) + 0.0);
  out << line;
  return 0;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string s = trim(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string factor = s.substr(0, s.size() - 2);
    if (!factor.empty() && factor.back() == '*') factor.pop_back();
    if (factor.empty() || factor == "+") return std::numbers::pi;
    if (factor == "-") return -std::numbers::pi;
    return parse_number(factor, text) * std::numbers::pi;
  }
  return parse_number(s, text);
}

std::pair<double, double> parse_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("range must look like a:b, got '" + std::string(text) + "'");
  const double first = parse_angle(text.substr(0, colon));
  const double last = parse_angle(text.substr(colon + 1));
  if (last < first) throw std::invalid_argument("range end lies before its start");
  return {first, last};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leggett-Garg qutrit simulator", "lgi_sim"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SweepOptions sweep;
  SweepFlags flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "K3 over a grid of omega*tau, exact or by Monte Carlo");
  sweep_cmd->add_option("--config", sweep.config_path, "JSON config; flags given explicitly take precedence");
  flags.rule = sweep_cmd->add_option("--rule", sweep.rule, "luders | vonneumann")->capture_default_str();
  flags.points = sweep_cmd->add_option("--points", sweep.points, "grid points")->capture_default_str();
  flags.range = sweep_cmd->add_option("--range", sweep.range, "first:last, radians or multiples of pi")->capture_default_str();
  flags.exact = sweep_cmd->add_flag("--exact", sweep.exact, "density-matrix values, no sampling");
  flags.shots = sweep_cmd->add_option("--shots", sweep.shots, "shots per two-time experiment")->capture_default_str();
  flags.exact->excludes(flags.shots);
  flags.noise_init = sweep_cmd->add_option("--noise-init", sweep.noise_init, "state preparation fidelity")->capture_default_str();
  flags.noise_op = sweep_cmd->add_option("--noise-op", sweep.noise_op, "fidelity per evolution block")->capture_default_str();
  flags.readout_flip = sweep_cmd->add_option("--readout-flip", sweep.readout_flip, "flip probability per readout")->capture_default_str();
  flags.seed = sweep_cmd->add_option("--seed", sweep.seed, "64-bit seed; falls back to LGI_SIM_SEED");
  flags.out_dir = sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->capture_default_str();
  flags.svg = sweep_cmd->add_flag("--svg", sweep.svg, "also write an SVG plot");
  sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads")->capture_default_str();

  CompileOptions compile;
  auto* compile_cmd = app.add_subcommand("compile", "compile a qutrit unitary into trapped-ion pulses");
  auto* eps_opt = compile_cmd->add_option("--epsilon", compile.epsilon, "precession angle of exp(-i eps Jx)");
  auto* matrix_opt = compile_cmd->add_option("--matrix", compile.matrix_path, "3x3 unitary, 9 're im' pairs row-major");
  eps_opt->excludes(matrix_opt);
  compile_cmd->add_option("--rabi", compile.rabi_hz, "Rabi frequency in Hz")->capture_default_str();
  compile_cmd->add_option("--out,-o", compile.out_path, "pulse file")->capture_default_str();

  double k3 = 0.0;
  double std_error = 0.0;
  double bound = 1.5;
  auto* violation_cmd = app.add_subcommand("violation", "distance of K3 above a bound in standard errors");
  violation_cmd->add_option("--k3", k3, "K3 estimate")->required();
  violation_cmd->add_option("--stderr", std_error, "standard error of K3")->required();
  violation_cmd->add_option("--bound", bound, "bound to compare against")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, flags, args, out);
    if (compile_cmd->parsed()) {
      if (compile.epsilon.empty() && compile.matrix_path.empty()) throw CommandError("compile needs --epsilon or --matrix");
      return cmd_compile(compile, args, out);
    }
    return cmd_violation(k3, std_error, bound, out);
  } catch (const std::exception& e) {
    err << "lgi_sim: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lgi
