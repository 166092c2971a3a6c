#include <iostream>

#include <CLI11.hpp>

#include "lfo/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Task-sequence execution engine for demonstration-derived robot skills"};
  app.require_subcommand(1);

  lfo::cli::CliConfig cfg;

  CLI::App* execute = app.add_subcommand("execute", "Run a demonstration on a robot model");
  execute->add_option("--robot", cfg.robot_path, "Robot description file")->required();
  execute->add_option("--demo", cfg.demo_path, "Demonstration file")->required();
  execute->add_option("--env", cfg.env_path, "Environment file")->required();
  execute->add_option("--trace", cfg.trace_path, "Trajectory output path");
  execute->add_option("--format", cfg.format, "Trace format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  double control_period = 0.0;
  CLI::Option* period_opt =
      execute->add_option("--control-period", control_period, "Control period in seconds");
  std::string strength;
  CLI::Option* strength_opt = execute->add_option(
      "--laban-strength", strength, "Labanotation constraint strength: none, elbow or full");
  double margin = 0.0;
  CLI::Option* margin_opt =
      execute->add_option("--margin", margin, "Clearance margin in meters for the summary check");

  CLI::App* validate = app.add_subcommand("validate", "Check a demonstration file");
  validate->add_option("--demo", cfg.demo_path, "Demonstration file")->required();

  CLI::App* classify =
      app.add_subcommand("classify", "Classify a feasible-displacement cone from JSON normals "
                         "on standard input");

  CLI11_PARSE(app, argc, argv);

  if (period_opt->count() > 0) cfg.control_period = control_period;
  if (strength_opt->count() > 0) cfg.laban_strength = strength;
  if (margin_opt->count() > 0) cfg.margin = margin;

  if (execute->parsed()) return lfo::cli::cmd_execute(cfg, std::cout, std::cerr);
  if (validate->parsed()) return lfo::cli::cmd_validate(cfg, std::cout, std::cerr);
  if (classify->parsed()) return lfo::cli::cmd_classify(std::cin, std::cout, std::cerr);
  return 1;
}
