#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "csl/cli/figures.hpp"

namespace csl::cli {

enum ExitCode : int {
  kOk = 0,
  kSchemaError = 2,
  kRegimeError = 3,
  kIoError = 4,
};

struct RateArgs {
  std::string scenario;
  std::string method = "continuous";  // continuous|small-delta|discrete|gpr|adler
};

struct FigureArgs {
  std::string name;
  std::string out;  // "-" for stdout
  FigureOptions options;
};

struct LayeringArgs {
  std::string stack;
};

struct SweepArgs {
  std::string scenario;  // scenario or, for N_layers, a layer-stack document
  std::string variable;  // L|Delta|l|N_layers
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  std::string scale = "linear";
  std::string out = "-";
};

struct EmErrorArgs {
  double l_min = 0.01;  // units of r_c
  double l_max = 0.3;
  int points = 12;
  double length = 10.0;  // cube side, units of r_c
  double delta = 1e-3;   // units of r_c
  std::optional<double> r_c;
  std::string out = "-";
};

// Each command writes its result to `out` only after it fully succeeded and
// reports failures on `err`; the return value is the process exit code.
int run_rate(const RateArgs& args, std::ostream& out, std::ostream& err);
int run_figure(const FigureArgs& args, std::ostream& out, std::ostream& err);
int run_layering(const LayeringArgs& args, std::ostream& out, std::ostream& err);
int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int run_em_error(const EmErrorArgs& args, std::ostream& out, std::ostream& err);

}  // namespace csl::cli
