#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mblab/harness/config.hpp"
#include "mblab/harness/io.hpp"

namespace mblab::harness {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,
  kExitValidation = 2,
  kExitNonConvergence = 3,
  kExitQuadratureTail = 4,
};

struct RunResult {
  int exit_code = kExitSuccess;
  std::string error;
  std::vector<std::string> warnings;
  std::vector<std::string> artifacts;  ///< file names inside the output directory
  Json manifest;
};

/// solve, probe-bilinear, verify-linear, resonance-report, convergence-study.
const std::vector<std::string>& subcommands();

/// Runs cfg.subcommand, writes its artifacts and manifest.json into
/// cfg.out_dir, and maps failures onto exit codes. Progress goes to `log`.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Config echo as {section: {key: value}} with every value in string form.
Json config_echo(const RunConfig& cfg);

/// Library and compiler versions.
Json version_info();

}  // namespace mblab::harness
