#include <iostream>

#include <CLI11.hpp>

#include "csl/cli/commands.hpp"

namespace {

template <class T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target,
                   const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace csl::cli;
  CLI::App app{"Collapse-induced localization rates for extended bodies"};
  app.require_subcommand(1);

  RateArgs rate;
  auto* rate_cmd = app.add_subcommand("rate", "Evaluate one scenario and print a JSON report");
  rate_cmd->add_option("scenario", rate.scenario, "Scenario JSON file")->required();
  rate_cmd->add_option("-m,--method", rate.method, "Rate method")
      ->check(CLI::IsMember({"continuous", "small-delta", "discrete", "gpr", "adler"}));

  FigureArgs fig;
  fig.out = "-";
  auto* fig_cmd = app.add_subcommand("figure", "Write a figure dataset as CSV");
  fig_cmd->add_option("name", fig.name, "Figure name (fig1L ... fig8R)")->required();
  fig_cmd->add_option("-o,--out", fig.out, "Output CSV path, '-' for stdout");
  optional_flag(fig_cmd, "--density", fig.options.density, "Density, nucleons/m^3");
  optional_flag(fig_cmd, "--rc", fig.options.r_c, "Localization distance r_c, m");
  optional_flag(fig_cmd, "--lambda", fig.options.lambda, "Collapse rate lambda, 1/s");
  optional_flag(fig_cmd, "--d", fig.options.d, "Cross-section side d, m");
  optional_flag(fig_cmd, "--delta", fig.options.delta, "Displacement Delta, m");
  optional_flag(fig_cmd, "--l", fig.options.l, "Lattice constant l, m");

  LayeringArgs layering;
  auto* layer_cmd = app.add_subcommand("layering", "Diffusion report for a layered stack");
  layer_cmd->add_option("stack", layering.stack, "Layer-stack JSON file")->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one scenario variable, CSV output");
  sweep_cmd->add_option("scenario", sweep.scenario, "Scenario or layer-stack JSON file")
      ->required();
  sweep_cmd->add_option("-v,--variable", sweep.variable, "Swept variable")
      ->required()
      ->check(CLI::IsMember({"L", "Delta", "l", "N_layers"}));
  sweep_cmd->add_option("--min", sweep.min, "Grid start (SI units)")->required();
  sweep_cmd->add_option("--max", sweep.max, "Grid end (SI units)")->required();
  sweep_cmd->add_option("--points", sweep.points, "Grid points")->required();
  sweep_cmd->add_option("--scale", sweep.scale, "linear or log");
  sweep_cmd->add_option("-o,--out", sweep.out, "Output CSV path, '-' for stdout");

  EmErrorArgs em;
  auto* em_cmd = app.add_subcommand("em-error", "Discrete vs continuum relative error over l");
  em_cmd->add_option("--l-min", em.l_min, "Smallest l / r_c");
  em_cmd->add_option("--l-max", em.l_max, "Largest l / r_c");
  em_cmd->add_option("--points", em.points, "Grid points (log spaced)");
  em_cmd->add_option("--length", em.length, "Cube side / r_c");
  em_cmd->add_option("--delta", em.delta, "Displacement / r_c");
  optional_flag(em_cmd, "--rc", em.r_c, "Localization distance r_c, m");
  em_cmd->add_option("-o,--out", em.out, "Output CSV path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchemaError;
  }

  if (*rate_cmd) return run_rate(rate, std::cout, std::cerr);
  if (*fig_cmd) return run_figure(fig, std::cout, std::cerr);
  if (*layer_cmd) return run_layering(layering, std::cout, std::cerr);
  if (*sweep_cmd) return run_sweep(sweep, std::cout, std::cerr);
  return run_em_error(em, std::cout, std::cerr);
}
