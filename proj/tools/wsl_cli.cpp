// Command-line front end; talks to the core exclusively through the C API.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsl_c.h"

int main(int argc, char** argv) {
  CLI::App app{"Weighted Strichartz estimate laboratory"};
  app.set_version_flag("--version", std::string(wsl_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int jobs = 1;
  unsigned long long seed = 0x5eed;
  app.add_option("--config", config_path,
                 "JSON config file (omit to use built-in defaults)");
  app.add_option("--out", out_dir, "output directory for artifacts");
  app.add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomized sweeps");

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"region", "emit the feasible (1/r, 1/rt) region polygon"},
      {"decay", "fit weighted dispersive decay rates"},
      {"homog", "homogeneous estimate ratio scan"},
      {"inhomog", "inhomogeneous (Duhamel) estimate ratio scan"},
      {"necessity", "counterexample growth scans"},
      {"solve", "split-step evolution diagnostics"},
      {"picard", "Picard iteration contraction diagnostics"},
      {"appendix", "interpolation closure sweep"},
      {"verify", "run the full acceptance battery"},
  };
  for (const auto& [name, desc] : subs)
    app.add_subcommand(name, desc)->fallthrough();

  CLI11_PARSE(app, argc, argv);

  for (const auto* sub : app.get_subcommands()) {
    int rc = wsl_run(sub->get_name().c_str(),
                     config_path.empty() ? nullptr : config_path.c_str(),
                     out_dir.c_str(), jobs, seed);
    const char* msg = wsl_last_error();
    if (msg && *msg) std::fputs(msg, rc == WSL_OK ? stdout : stderr);
    if (rc != WSL_OK) {
      std::fprintf(stderr, "%s: failed (code %d)\n", sub->get_name().c_str(),
                   rc);
      return rc == WSL_ERR_CHECK_FAILED ? 1 : 2;
    }
    std::printf("%s: ok (artifacts in %s)\n", sub->get_name().c_str(),
                out_dir.c_str());
  }
  return 0;
}
