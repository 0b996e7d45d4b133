#include "csl/cli/figures.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "csl/cli/parallel.hpp"
#include "csl/continuum_rates.hpp"
#include "csl/lattice_rates.hpp"

namespace csl::cli {

namespace {

using Row = std::vector<std::optional<double>>;
constexpr double kMaxFactorizedSites = 1e8;

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (points - 1));
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  return g;
}

struct Setup {
  PhysParams params;
  double density = 1e30;
  double d = 0.0;
  double delta = 0.0;
  double l = 0.0;
};

Setup resolve(const FigureOptions& o, double density, double d_rc, double delta_rc,
              double l_rc) {
  Setup s;
  if (o.r_c) s.params.r_c = *o.r_c;
  if (o.lambda) s.params.lambda = *o.lambda;
  const double r = s.params.r_c;
  s.density = o.density.value_or(density);
  s.d = o.d.value_or(d_rc * r);
  s.delta = o.delta.value_or(delta_rc * r);
  s.l = o.l.value_or(l_rc * r);
  return s;
}

void describe(Table& t, const std::string& name, const Setup& s, bool d, bool delta,
              bool l) {
  t.comments.push_back("figure: " + name);
  t.comments.push_back("density = " + format_number(s.density) + " nucleons/m^3");
  t.comments.push_back("r_c = " + format_number(s.params.r_c) + " m");
  t.comments.push_back("lambda = " + format_number(s.params.lambda) + " 1/s");
  if (d) t.comments.push_back("d = " + format_number(s.d) + " m");
  if (delta) t.comments.push_back("Delta = " + format_number(s.delta) + " m");
  if (l) t.comments.push_back("l = " + format_number(s.l) + " m");
}

Table fill(Table t, const std::vector<double>& grid, const std::function<Row(double)>& row) {
  t.columns.assign(kFigureColumns.begin(), kFigureColumns.end());
  t.rows = parallel_map<Row>(grid.size(), [&](std::size_t i) { return row(grid[i]); });
  return t;
}

// Cube (fig 1) or d x d x L cuboid (fig 2) against L.
Table length_sweep(const std::string& name, const FigureOptions& o, double delta_rc,
                   bool square_face) {
  const Setup s = resolve(o, 1e30, 10.0, delta_rc, 0.0);
  const double r = s.params.r_c;
  Table t;
  describe(t, name, s, square_face, true, false);
  t.comments.push_back(std::string("body: ") +
                       (square_face ? "cuboid d x d x L, displaced along L" : "cube of side L"));
  t.comments.push_back("sweep_value: L / r_c");
  if (square_face) {
    t.comments.push_back("gamma_gpr is unscaled (the published plot divides it by 1e4)");
  }
  return fill(std::move(t), log_grid(1e-2, 1e3, 201), [&](double x) -> Row {
    const double len = x * r;
    const Geometry g = square_face ? Geometry::cuboid(s.d, s.d, len, s.density)
                                   : Geometry::cube(len, s.density);
    const auto disp = Displacement::along_z(s.delta);
    return {x, continuum::gamma_cuboid(g, disp, s.params).gamma, std::nullopt,
            continuum::gamma_gpr(g, disp, s.params).gamma,
            continuum::gamma_adler(g, disp, s.params).gamma, std::nullopt};
  });
}

Table fig5(const FigureOptions& o) {
  const Setup s = resolve(o, 1e30, 10.0, 0.0, 0.0);
  const double r = s.params.r_c;
  const double len = 20.0 * r;
  Table t;
  describe(t, "fig5", s, true, false, false);
  t.comments.push_back("body: cuboid d x d x L with L = " + format_number(len) + " m");
  t.comments.push_back("sweep_value: Delta / r_c");
  const Geometry g = Geometry::cuboid(s.d, s.d, len, s.density);
  return fill(std::move(t), log_grid(1e-2, 1e2, 201), [&](double x) -> Row {
    const auto disp = Displacement::along_z(x * r);
    return {x, continuum::gamma_cuboid(g, disp, s.params).gamma, std::nullopt,
            continuum::gamma_gpr(g, disp, s.params).gamma,
            continuum::gamma_adler(g, disp, s.params).gamma, std::nullopt};
  });
}

Table fig6(const FigureOptions& o) {
  const Setup s = resolve(o, 1e15, 100.0, 0.0, 100.0);
  const double r = s.params.r_c;
  const double len = 1000.0 * r;
  const Geometry g = Geometry::cuboid(s.d, s.d, len, s.density);
  const Lattice lat = lattice_from_cuboid(g, s.l);
  Table t;
  describe(t, "fig6", s, true, false, true);
  t.comments.push_back("body: cuboid d x d x L with L = " + format_number(len) + " m");
  t.comments.push_back("lattice: " + std::to_string(lat.nx()) + " x " +
                       std::to_string(lat.ny()) + " x " + std::to_string(lat.nz()) +
                       " sites, n_a = " + format_number(lat.n_a()));
  t.comments.push_back("sweep_value: Delta / r_c");
  const double top = 8.0 * s.l / r;
  const int points = static_cast<int>(std::lround(top / 0.5)) + 1;
  return fill(std::move(t), linear_grid(0.0, top, points), [&](double x) -> Row {
    const auto disp = Displacement::along_z(x * r);
    return {x, continuum::gamma_cuboid(g, disp, s.params).gamma,
            lattice::gamma_discrete(lat, disp, s.params).gamma, std::nullopt,
            std::nullopt, std::nullopt};
  });
}

Table fig7(const std::string& name, const FigureOptions& o, bool left) {
  const Setup s = resolve(o, 1e30, 10.0, 1e-3, 0.0);
  const double r = s.params.r_c;
  Table t;
  describe(t, name, s, !left, true, false);
  if (left) {
    t.comments.push_back("gamma_c: cube of side L; gamma_alt_geometry: sphere of equal volume");
  } else {
    t.comments.push_back(
        "gamma_c: cuboid d x d x L; gamma_alt_geometry: cylinder of length L, radius d/sqrt(pi)");
  }
  t.comments.push_back("sweep_value: L / r_c");
  const auto grid = left ? log_grid(1e-2, 1e3, 201) : linear_grid(1.0, 100.0, 100);
  return fill(std::move(t), grid, [&](double x) -> Row {
    const double len = x * r;
    const auto disp = Displacement::along_z(s.delta);
    double main = 0.0, alt = 0.0;
    if (left) {
      main = continuum::gamma_cuboid(Geometry::cube(len, s.density), disp, s.params).gamma;
      const double radius = len * std::cbrt(3.0 / (4.0 * std::numbers::pi));
      alt = continuum::gamma_small_delta(Geometry::sphere(radius, s.density), disp, s.params)
                .gamma;
    } else {
      main = continuum::gamma_cuboid(Geometry::cuboid(s.d, s.d, len, s.density), disp,
                                     s.params)
                 .gamma;
      const double radius = s.d / std::sqrt(std::numbers::pi);
      alt = continuum::gamma_small_delta(Geometry::cylinder(radius, len, s.density), disp,
                                         s.params)
                .gamma;
    }
    return {x, main, std::nullopt, std::nullopt, std::nullopt, alt};
  });
}

// Cube of side L = n l on a fixed L grid (in r_c units); n = round(L / l).
Table fig8(const std::string& name, const FigureOptions& o, double density,
           double l_rc, double lo_rc, double hi_rc, int points) {
  const Setup s = resolve(o, density, 0.0, 1e-3, l_rc);
  const double r = s.params.r_c;
  Table t;
  describe(t, name, s, false, true, true);
  t.comments.push_back("body: cube of side L = n l, n = round(L / l), n_a = density * l^3");
  t.comments.push_back("sweep_value: realized L / r_c");
  const auto grid = linear_grid(lo_rc, hi_rc, points);
  Table out = fill(std::move(t), grid, [&](double x) -> Row {
    const long n = std::max(1L, std::lround(x * r / s.l));
    const double nd = static_cast<double>(n);
    const double len = nd * s.l;
    const auto disp = Displacement::along_z(s.delta);
    const double gc =
        continuum::gamma_cuboid(Geometry::cube(len, s.density), disp, s.params).gamma;
    std::optional<double> gd;
    if (nd * nd * nd <= kMaxFactorizedSites) {
      const Lattice lat(s.l, n, n, n, s.density * s.l * s.l * s.l);
      gd = lattice::gamma_discrete(lat, disp, s.params).gamma;
    }
    return {len / r, gc, gd, std::nullopt, std::nullopt, std::nullopt};
  });
  bool guarded = false;
  for (const auto& row : out.rows) guarded |= !row[2].has_value();
  if (guarded) {
    out.comments.push_back("gamma_d omitted where the lattice exceeds 1e8 sites");
  }
  return out;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig1L", "fig1R", "fig2L", "fig2R",
                                                 "fig5",  "fig6",  "fig7L", "fig7R",
                                                 "fig8L", "fig8R"};
  return names;
}

Table figure_table(const std::string& name, const FigureOptions& o) {
  if (name == "fig1L") return length_sweep(name, o, 1e-3, false);
  if (name == "fig1R") return length_sweep(name, o, 1e3, false);
  if (name == "fig2L") return length_sweep(name, o, 1e-3, true);
  if (name == "fig2R") return length_sweep(name, o, 1e3, true);
  if (name == "fig5") return fig5(o);
  if (name == "fig6") return fig6(o);
  if (name == "fig7L") return fig7(name, o, true);
  if (name == "fig7R") return fig7(name, o, false);
  if (name == "fig8L") return fig8(name, o, 1e21, 1.0, 1.0, 30.0, 30);
  if (name == "fig8R") return fig8(name, o, 1e18, 10.0, 100.0, 1000.0, 91);
  throw std::invalid_argument("unknown figure '" + name + "'");
}

std::string format_number(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

}  // namespace csl::cli
