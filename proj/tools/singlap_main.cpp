#include <string>
#include <vector>

#include "CLI11.hpp"
#include "singlap/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Singular quasilinear system solver and bound calculator"};
  app.require_subcommand(1);

  singlap::CliOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (default: config [output] dir)");
    sub->add_option("--jobs", opts.jobs, "worker threads for sweep")->check(CLI::PositiveNumber);
    sub->add_option("--format", opts.formats, "output formats (default: config [output] formats)")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
  };

  CLI::App* check = app.add_subcommand("check", "validate hypotheses and weight integrability");
  CLI::App* bounds = app.add_subcommand("bounds", "compute the a priori bound ledger");
  CLI::App* solve = app.add_subcommand("solve", "run the continuation solve and certify");
  CLI::App* sweep = app.add_subcommand("sweep", "solve across one varied parameter");
  for (CLI::App* sub : {check, bounds, solve, sweep}) add_common(sub);
  sweep->add_option("--param", opts.sweep_param, "one of r_max | nodes | eps_floor | xi1")
      ->required();
  sweep->add_option("--values", opts.sweep_values, "comma-separated parameter values")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (check->parsed()) return singlap::cmd_check(opts);
  if (bounds->parsed()) return singlap::cmd_bounds(opts);
  if (solve->parsed()) return singlap::cmd_solve(opts);
  return singlap::cmd_sweep(opts);
}
