// corad: scenario runner for residue currents and their complex Radon /
// Fantappie transforms on curve fixtures in CP^2.

#include <CLI11.hpp>
#include <cstdio>
#include <sstream>

#include "scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Residue currents and complex Radon transforms on curves in CP^2"};
  app.require_subcommand(1);

  corad::cli::RunOptions options;
  std::string format_list = "csv,json";
  double tol = 0.0;
  int kappa = 0;
  int grid = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", options.scenario_path, "Scenario JSON file")
        ->required();
    sub->add_option("--out", options.out_dir, "Output directory");
    sub->add_option("--tol", tol, "Override the scenario tolerances");
    sub->add_option("--kappa", kappa, "Override the schedule hierarchy exponent");
    sub->add_option("--grid", grid, "Override the Martineau quadrature grid");
    sub->add_option("--format", format_list, "Report formats (csv,json)");
  };

  add_common(app.add_subcommand("residue",
                                "Residue pairings and basis cross-checks"));
  add_common(app.add_subcommand("radon", "Radon transform over test points"));
  add_common(app.add_subcommand("fantappie",
                                "Fantappie transform of the scenario functional"));
  add_common(app.add_subcommand("invert",
                                "Martineau inversion roundtrip against dg"));
  add_common(app.add_subcommand("verify",
                                "PDE system residuals of the Radon potential"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  options.subcommand = app.get_subcommands().front()->get_name();
  if (tol > 0.0) options.tol = tol;
  if (kappa > 0) options.kappa = kappa;
  if (grid > 0) options.grid = grid;
  options.formats.clear();
  std::stringstream ss(format_list);
  std::string fmt;
  while (std::getline(ss, fmt, ','))
    if (!fmt.empty()) options.formats.push_back(fmt);

  corad::cli::RunOutcome outcome = corad::cli::run_scenario(options);
  if (!outcome.diagnostic.empty())
    std::fprintf(stderr, "error: %s\n", outcome.diagnostic.c_str());
  for (const std::string& f : outcome.written_files)
    std::printf("wrote %s\n", f.c_str());
  std::printf("%s: %zu rows, exit %d\n", options.subcommand.c_str(),
              outcome.table.rows.size(), outcome.exit_code);
  return outcome.exit_code;
}
