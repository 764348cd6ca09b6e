#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mblab/probes.hpp"
#include "mblab/solver.hpp"

namespace mblab::harness {

/// One of the four data functions. Kinds:
///   zero                   0
///   gaussian               amplitude * exp(-x^2 / (2 width^2))
///   expsin                 amplitude * exp(-x / width) * sin(x / width)
///   csv                    two-column file at `path`
struct DataSpec {
  std::string kind = "zero";
  double amplitude = 0.0;
  double width = 1.0;
  std::string path;
};

struct RunConfig {
  std::string subcommand;
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  bool strict = false;

  // [problem]
  double alpha = 0.5;
  double s = 1.0;
  DataSpec u0, v0, f, g;
  double data_extent = 12.0;
  std::size_t data_intervals = 1200;

  // [solver]
  SolverParams solver;

  // [probe.bilinear]
  std::string bilinear_which = "all";
  BilinearProbeConfig bilinear;

  // [probe.linear]
  std::string linear_which = "all";
  LinearProbeConfig linear;

  // [resonance]
  std::vector<double> resonance_alphas{0.25, 0.5, 0.899};
  std::size_t resonance_samples = 10000;
  double region_c = 0.0;  ///< 0 selects the midpoint of (1, sqrt|r2/r1|)

  // [convergence]
  std::size_t levels = 3;
};

/// Documentation and accessors for one config key.
struct KeyInfo {
  std::string section;
  std::string key;
  std::string type;
  std::string description;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

/// All recognised keys, in documentation order.
const std::vector<KeyInfo>& key_table();

/// Parses an INI-style file ([section] headers, key = value, '#' or ';'
/// comments). Unknown sections or keys are rejected.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

/// Sets section.key from a string value; throws ValidationError if unknown or malformed.
void set_key(RunConfig& cfg, const std::string& section, const std::string& key,
             const std::string& value);

/// Builds the four HalfLineFunctions and validates the resulting problem.
ProblemSpec build_problem(const RunConfig& cfg);

/// Markdown page listing every key with its type, default, and meaning.
std::string config_reference_markdown();

}  // namespace mblab::harness
