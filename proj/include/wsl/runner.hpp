#pragma once

#include <string>
#include <vector>

namespace wsl {

struct RunOptions {
  std::string config_path;  // empty -> built-in defaults
  std::string out_dir = "out";
  int jobs = 1;
  unsigned long long seed = 0x5eed;
};

// Subcommands: region, decay, homog, inhomog, necessity, solve, picard,
// appendix, verify. Writes CSV + SVG + manifest.json under out_dir.
// Returns 0 on success, nonzero on validation or check failure; diagnostics
// go to the string.
int run_subcommand(const std::string& name, const RunOptions& opts,
                   std::string& diagnostics);

std::string default_config_json();

// One acceptance criterion outcome; shared by the `verify` subcommand and the
// standalone acceptance binary.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<CheckResult> acceptance_checks(unsigned long long seed);

}  // namespace wsl
