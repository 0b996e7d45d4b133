#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "csl/diffusion.hpp"
#include "csl/domain.hpp"

namespace csl::cli {

/// Malformed input. `line` is 1-based, 0 when unknown; `field` is a dotted
/// path such as "geometry.dims.lx".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatticeSpec {
  double l = 0.0;
  std::optional<double> n_a;
};

struct Scenario {
  PhysParams params;
  std::optional<Geometry> geometry;
  DensityUnit density_unit = DensityUnit::NucleonsPerCubicMeter;
  double density_input = 0.0;  // as written, before unit conversion
  std::optional<LatticeSpec> lattice;
  Displacement displacement;
};

struct LayerScenario {
  PhysParams params;
  DensityUnit density_unit = DensityUnit::NucleonsPerCubicMeter;
  std::optional<LayerStack> stack;               // explicit "layers" list
  std::optional<diffusion::AlternatingStack> alternating;
  std::string name;

  /// The stack either way (alternating patterns are expanded).
  LayerStack resolved() const;
};

std::string read_file(const std::string& path);  // throws IoError

/// Parses a scenario document. Throws SchemaError.
Scenario parse_scenario(const std::string& text);

/// Parses a layer-stack document: {"params"?, "d", "density_unit"?,
/// "layers": [{"thickness", "density"}...]} or
/// {"params"?, "d", "density_unit"?, "alternating": {"n_pairs", "l_odd",
/// "l_even", "rho_odd", "rho_even"}}. Throws SchemaError.
LayerScenario parse_layer_scenario(const std::string& text);

/// Echo of a scenario in the input schema (densities in the input unit).
nlohmann::ordered_json to_json(const Scenario& s);

}  // namespace csl::cli
