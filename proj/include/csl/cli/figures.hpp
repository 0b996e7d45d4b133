#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace csl::cli {

/// Flag overrides of the captioned figure parameters (SI units).
struct FigureOptions {
  std::optional<double> density;  // nucleons/m^3
  std::optional<double> r_c;
  std::optional<double> lambda;
  std::optional<double> d;
  std::optional<double> delta;
  std::optional<double> l;
};

inline constexpr std::array<const char*, 6> kFigureColumns = {
    "sweep_value", "gamma_c", "gamma_d", "gamma_gpr", "gamma_adler",
    "gamma_alt_geometry"};

struct Table {
  std::vector<std::string> comments;  // written with a leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

const std::vector<std::string>& figure_names();

/// Throws std::invalid_argument for an unknown name.
Table figure_table(const std::string& name, const FigureOptions& options);

/// Shortest round-trip decimal form.
std::string format_number(double value);

/// Comments, header, rows; absent values as empty fields.
void write_csv(std::ostream& out, const Table& table);

}  // namespace csl::cli
