#pragma once

#include <string>
#include <vector>

namespace singlap {

/// Parsed command line, shared by the four subcommands. Empty out_dir / formats
/// defer to the [output] section of the config.
struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> formats;
  unsigned jobs = 1;
  std::string sweep_param;  // sweep only: r_max | nodes | eps_floor | xi1
  std::vector<std::string> sweep_values;
};

/// Exit codes, shared across subcommands:
///   0  checks pass / bounds computed / solve converged and certified
///   1  inadmissible data or failed certification
///   2  I/O or parse failure (config, output files, bad sweep values)
///   3  solver did not converge
int cmd_check(const CliOptions& opts);
int cmd_bounds(const CliOptions& opts);
int cmd_solve(const CliOptions& opts);
int cmd_sweep(const CliOptions& opts);

}  // namespace singlap
