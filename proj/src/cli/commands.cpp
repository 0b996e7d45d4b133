#include "csl/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "csl/cli/parallel.hpp"
#include "csl/cli/scenario.hpp"
#include "csl/continuum_rates.hpp"
#include "csl/diffusion.hpp"
#include "csl/errors.hpp"
#include "csl/euler_maclaurin.hpp"
#include "csl/lattice_rates.hpp"

namespace csl::cli {

using ojson = nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file.flush()) throw IoError("write to '" + path + "' failed");
}

// Runs a command body and maps failures onto exit codes.
int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const SchemaError& e) {
    err << "schema error";
    if (e.line() > 0) err << " at line " << e.line();
    if (!e.field().empty()) err << ", field '" << e.field() << "'";
    err << ": " << e.what() << '\n';
    return kSchemaError;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    // Geometry, displacement, size and convergence failures of valid input.
    err << "error: " << e.what() << '\n';
    return kRegimeError;
  }
}

ojson validity_json(const RateResult& r) {
  ojson list = ojson::array();
  for (const auto& f : r.validity) {
    list.push_back({{"name", f.name},
                    {"status", f.satisfied ? "satisfied" : "violated"},
                    {"requirement", f.requirement}});
  }
  return list;
}

std::vector<double> grid(double lo, double hi, int points, const std::string& scale) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    g[i] = scale == "log" ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                          : lo + t * (hi - lo);
  }
  return g;
}

Geometry with_length(const Geometry& g, double len) {
  const double rho = g.density_n();
  if (const auto* c = std::get_if<Cuboid>(&g.shape())) return Geometry::cuboid(c->lx, c->ly, len, rho);
  if (std::holds_alternative<Cube>(g.shape())) return Geometry::cube(len, rho);
  if (std::holds_alternative<Sphere>(g.shape())) return Geometry::sphere(len, rho);
  const auto& cy = std::get<Cylinder>(g.shape());
  return Geometry::cylinder(cy.r, len, rho);
}

Displacement with_magnitude(const Displacement& d, double magnitude) {
  const double m = d.magnitude();
  if (m == 0.0) return Displacement::along_z(magnitude);
  return {d.dx / m * magnitude, d.dy / m * magnitude, d.dz / m * magnitude};
}

double uniform_reference_density(const LayerStack& stack, std::string& rule) {
  if (stack.is_two_density_alternating()) {
    rule = "(rho_odd + rho_even) / 2";
    return 0.5 * (stack.layers()[0].density_n + stack.layers()[1].density_n);
  }
  rule = "thickness-weighted mean density";
  return stack.mean_density();
}

}  // namespace

int run_rate(const RateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = parse_scenario(read_file(args.scenario));
    const Geometry& g = *s.geometry;
    RateResult result;
    ojson extra = ojson::object();
    if (args.method == "continuous") {
      if (!g.box()) {
        throw UnsupportedDisplacement(
            "method 'continuous' has a closed form for cuboids and cubes only; use "
            "'small-delta' for " + std::string(g.kind()));
      }
      result = continuum::gamma_cuboid(g, s.displacement, s.params);
    } else if (args.method == "small-delta") {
      result = continuum::gamma_small_delta(g, s.displacement, s.params);
    } else if (args.method == "discrete") {
      if (!s.lattice) throw SchemaError("lattice", 0, "method 'discrete' needs a lattice");
      const Lattice lat = lattice_from_cuboid(g, s.lattice->l, s.lattice->n_a);
      result = lattice::gamma_discrete(lat, s.displacement, s.params);
      extra["lattice_sites"] = {lat.nx(), lat.ny(), lat.nz()};
      extra["n_a"] = lat.n_a();
    } else if (args.method == "gpr") {
      result = continuum::gamma_gpr(g, s.displacement, s.params);
    } else if (args.method == "adler") {
      result = continuum::gamma_adler(g, s.displacement, s.params);
    } else {
      throw SchemaError("method", 0, "unknown method '" + args.method + "'");
    }
    ojson report = to_json(s);
    report["method"] = std::string(to_string(result.method));
    report["gamma"] = result.gamma;
    report["validity"] = validity_json(result);
    if (result.error_estimate) report["error_estimate"] = *result.error_estimate;
    report["nucleon_count"] = nucleon_count(g);
    for (auto& [k, v] : extra.items()) report[k] = v;
    emit(report.dump(2) + "\n", "-", out);
  });
}

int run_figure(const FigureArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), args.name) == names.end()) {
      throw SchemaError("name", 0, "unknown figure '" + args.name + "'");
    }
    std::ostringstream csv;
    write_csv(csv, figure_table(args.name, args.options));
    emit(csv.str(), args.out, out);
  });
}

int run_layering(const LayeringArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = read_file(args.stack);
    const LayerScenario s = parse_layer_scenario(text);
    const LayerStack stack = s.resolved();
    const diffusion::LayerEta eta = s.alternating
                                        ? diffusion::eta_zz_alternating(*s.alternating, s.params)
                                        : diffusion::eta_zz_layered(stack, s.params);
    std::string rule;
    const double rho_uni = uniform_reference_density(stack, rule);
    const Geometry uniform =
        Geometry::cuboid(stack.d(), stack.d(), stack.total_length(), rho_uni);
    const double eta_uni = diffusion::eta_zz_cuboid_uniform(uniform, s.params);
    const double to_input_unit =
        s.density_unit == DensityUnit::KilogramsPerCubicMeter ? s.params.m_n : 1.0;

    ojson report = nlohmann::ordered_json::parse(text);
    report["n_layers"] = stack.size();
    report["total_length"] = stack.total_length();
    report["eta_zz"] = eta.total;
    report["decomposition"] = {{"boundary", eta.boundary_part},
                               {"interface", eta.interface_part}};
    if (eta.orders) report["orders"] = {{"eta0", eta.orders->eta0}, {"eta1", eta.orders->eta1}};
    report["uniform_reference"] = {{"rule", rule},
                                   {"density", rho_uni * to_input_unit},
                                   {"eta_zz", eta_uni}};
    report["ratio"] = eta.total / eta_uni;
    ojson assumptions = ojson::array();
    assumptions.push_back("uniform body has the same d and total length as the stack");
    assumptions.push_back("interfaces = n_layers - 1 = " + std::to_string(stack.size() - 1));
    if (stack.is_two_density_alternating()) {
      const double n_pairs = 0.5 * static_cast<double>(stack.size());
      report["ratio_formula"] = diffusion::layering_ratio(
          n_pairs, stack.layers()[0].density_n, stack.layers()[1].density_n);
      assumptions.push_back("ratio_formula uses N = n_layers / 2 = " +
                            format_number(n_pairs) + " in 1 + (4N - 1) drho^2 / (rho_o + rho_e)^2");
    }
    report["assumptions"] = assumptions;
    emit(report.dump(2) + "\n", "-", out);
  });
}

int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(args.min < args.max)) throw SchemaError("min", 0, "sweep needs min < max");
    if (args.points < 2) throw SchemaError("points", 0, "sweep needs at least 2 points");
    if (args.scale != "linear" && args.scale != "log") {
      throw SchemaError("scale", 0, "scale must be 'linear' or 'log'");
    }
    if (args.scale == "log" && !(args.min > 0.0)) {
      throw SchemaError("min", 0, "log scale needs min > 0");
    }
    const std::string text = read_file(args.scenario);
    Table table;
    table.comments.push_back("sweep: " + args.variable + " (" + args.scale + ", SI units)");
    using Row = std::vector<std::optional<double>>;

    if (args.variable == "N_layers") {
      const LayerScenario s = parse_layer_scenario(text);
      if (!s.alternating) {
        throw SchemaError("alternating", 0, "N_layers sweeps need an 'alternating' stack");
      }
      auto values = grid(args.min, args.max, args.points, args.scale);
      for (double& v : values) v = std::max(1.0, std::round(v));
      table.columns = {"sweep_value", "eta_total", "eta_boundary", "eta_interface", "ratio"};
      table.rows = parallel_map<Row>(values.size(), [&](std::size_t i) -> Row {
        diffusion::AlternatingStack a = *s.alternating;
        a.n_pairs = static_cast<long>(values[i]);
        const auto eta = diffusion::eta_zz_alternating(a, s.params);
        const double len = a.n_pairs * (a.l_odd + a.l_even);
        const double rho_uni = 0.5 * (a.rho_odd + a.rho_even);
        const double uni = diffusion::eta_zz_cuboid_uniform(
            Geometry::cuboid(a.d, a.d, len, rho_uni), s.params);
        return {values[i], eta.total, eta.boundary_part, eta.interface_part, eta.total / uni};
      });
    } else {
      const Scenario s = parse_scenario(text);
      if (args.variable != "L" && args.variable != "Delta" && args.variable != "l") {
        throw SchemaError("variable", 0, "variable must be L, Delta, l or N_layers");
      }
      if (args.variable == "l" && !s.lattice) {
        throw SchemaError("lattice", 0, "sweeping l needs a lattice block");
      }
      const auto values = grid(args.min, args.max, args.points, args.scale);
      table.columns.assign(kFigureColumns.begin(), kFigureColumns.end());
      table.rows = parallel_map<Row>(values.size(), [&](std::size_t i) -> Row {
        Geometry g = *s.geometry;
        Displacement disp = s.displacement;
        std::optional<LatticeSpec> lat = s.lattice;
        if (args.variable == "L") g = with_length(g, values[i]);
        if (args.variable == "Delta") disp = with_magnitude(disp, values[i]);
        if (args.variable == "l") lat = LatticeSpec{values[i], std::nullopt};
        const double gc = g.box() ? continuum::gamma_cuboid(g, disp, s.params).gamma
                                  : continuum::gamma_small_delta(g, disp, s.params).gamma;
        std::optional<double> gd;
        if (lat && g.box()) {
          const Lattice l = lattice_from_cuboid(g, lat->l, lat->n_a);
          if (l.n_sites() <= 1e8L) gd = lattice::gamma_discrete(l, disp, s.params).gamma;
        }
        return {values[i], gc, gd, continuum::gamma_gpr(g, disp, s.params).gamma,
                continuum::gamma_adler(g, disp, s.params).gamma, std::nullopt};
      });
    }
    std::ostringstream csv;
    write_csv(csv, table);
    emit(csv.str(), args.out, out);
  });
}

int run_em_error(const EmErrorArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(args.l_min > 0.0 && args.l_min < args.l_max)) {
      throw SchemaError("l-min", 0, "need 0 < l-min < l-max");
    }
    if (args.points < 2) throw SchemaError("points", 0, "need at least 2 points");
    PhysParams params;
    if (args.r_c) params.r_c = *args.r_c;
    params.lambda = 1.0;
    const double r = params.r_c;
    const auto ls = grid(args.l_min, args.l_max, args.points, "log");
    Table table;
    table.comments.push_back("cube of side n l with n = round(L / l), L = " +
                             format_number(args.length) + " r_c");
    table.comments.push_back("Delta = " + format_number(args.delta) +
                             " r_c along z; lambda = 1, n_a = 1");
    table.columns = {"l_over_rc",       "n",          "gamma_d",
                     "gamma_c",         "relative_error", "predicted_large_body",
                     "predicted_small_body"};
    using Row = std::vector<std::optional<double>>;
    table.rows = parallel_map<Row>(ls.size(), [&](std::size_t i) -> Row {
      const double l = ls[i] * r;
      const long n = std::max(1L, std::lround(args.length / ls[i]));
      const Lattice lat(l, n, n, n, 1.0);
      const auto disp = Displacement::along_z(args.delta * r);
      const double gd = lattice::gamma_discrete(lat, disp, params).gamma;
      const double side = static_cast<double>(n) * l;
      const double gc =
          continuum::gamma_cuboid(Geometry::cube(side, 1.0 / (l * l * l)), disp, params).gamma;
      return {ls[i],
              static_cast<double>(n),
              gd,
              gc,
              std::abs(gd - gc) / gc,
              em::relative_error_predict(em::Regime::LargeBody, l, r),
              em::relative_error_predict(em::Regime::SmallBody, l, r)};
    });
    std::ostringstream csv;
    write_csv(csv, table);
    emit(csv.str(), args.out, out);
  });
}

}  // namespace csl::cli
