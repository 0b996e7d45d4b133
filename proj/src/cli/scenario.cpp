#include "csl/cli/scenario.hpp"

#include <fstream>
#include <sstream>

#include "csl/errors.hpp"

namespace csl::cli {

using nlohmann::json;

namespace {

int line_at(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Best-effort source line of a dotted field path: each component is looked up
// as a quoted key after the previous one. Falls back to the deepest match.
int locate(const std::string& text, const std::string& path) {
  std::size_t pos = 0;
  std::size_t found = std::string::npos;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    const auto bracket = part.find('[');
    if (bracket != std::string::npos) part = part.substr(0, bracket);
    const std::size_t at = text.find("\"" + part + "\"", pos);
    if (at == std::string::npos) break;
    found = pos = at;
  }
  return found == std::string::npos ? 0 : line_at(text, found);
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  json parse() const {
    try {
      return json::parse(text_);
    } catch (const json::parse_error& e) {
      throw SchemaError("", line_at(text_, e.byte > 0 ? e.byte - 1 : 0),
                        std::string("malformed JSON: ") + e.what());
    }
  }

  [[noreturn]] void fail(const std::string& path, const std::string& message) const {
    throw SchemaError(path, locate(text_, path), message);
  }

  const json& object(const json& parent, const std::string& key,
                     const std::string& path) const {
    if (!parent.contains(key)) fail(path, "missing required object");
    const json& value = parent.at(key);
    if (!value.is_object()) fail(path, "expected an object");
    return value;
  }

  double number(const json& parent, const std::string& key,
                const std::string& path) const {
    if (!parent.contains(key)) fail(path, "missing required number");
    const json& value = parent.at(key);
    if (!value.is_number()) fail(path, "expected a number");
    return value.get<double>();
  }

  std::optional<double> optional_number(const json& parent, const std::string& key,
                                        const std::string& path) const {
    if (!parent.contains(key)) return std::nullopt;
    return number(parent, key, path);
  }

  std::string string(const json& parent, const std::string& key,
                     const std::string& path) const {
    if (!parent.contains(key)) fail(path, "missing required string");
    const json& value = parent.at(key);
    if (!value.is_string()) fail(path, "expected a string");
    return value.get<std::string>();
  }

  PhysParams params(const json& root, bool required) const {
    PhysParams p;
    if (!root.contains("params")) {
      if (required) fail("params", "missing required object");
      return p;
    }
    const json& obj = object(root, "params", "params");
    p.lambda = number(obj, "lambda", "params.lambda");
    p.r_c = number(obj, "r_c", "params.r_c");
    if (auto m = optional_number(obj, "m_n", "params.m_n")) p.m_n = *m;
    if (auto t = optional_number(obj, "rel_tol", "params.rel_tol")) p.rel_tol = *t;
    try {
      p.validate();
    } catch (const DomainError& e) {
      fail("params", e.what());
    }
    return p;
  }

  DensityUnit unit(const json& parent, const std::string& path) const {
    if (!parent.contains("density_unit")) return DensityUnit::NucleonsPerCubicMeter;
    const std::string text = string(parent, "density_unit", path);
    const auto u = parse_density_unit(text);
    if (!u) fail(path, "unknown density unit '" + text + "' (nucleons/m^3 or kg/m^3)");
    return *u;
  }

 private:
  const std::string& text_;
};

// Dimension lookup: inside "dims" when present, else inline.
double dim(const Reader& r, const json& geom, const std::string& key) {
  if (geom.contains("dims")) {
    const json& dims = r.object(geom, "dims", "geometry.dims");
    return r.number(dims, key, "geometry.dims." + key);
  }
  return r.number(geom, key, "geometry." + key);
}

}  // namespace

SchemaError::SchemaError(std::string field, int line, const std::string& message)
    : std::runtime_error(message), field_(std::move(field)), line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario parse_scenario(const std::string& text) {
  const Reader r(text);
  const json root = r.parse();
  if (!root.is_object()) r.fail("", "top level must be an object");
  Scenario s;
  s.params = r.params(root, true);

  const json& geom = r.object(root, "geometry", "geometry");
  const std::string kind = r.string(geom, "kind", "geometry.kind");
  s.density_unit = r.unit(geom, "geometry.density_unit");
  s.density_input = r.number(geom, "density", "geometry.density");
  const double density = to_nucleon_density(s.density_input, s.density_unit, s.params);
  try {
    if (kind == "cuboid") {
      s.geometry = Geometry::cuboid(dim(r, geom, "lx"), dim(r, geom, "ly"),
                                    dim(r, geom, "lz"), density);
    } else if (kind == "cube") {
      s.geometry = Geometry::cube(dim(r, geom, "l"), density);
    } else if (kind == "sphere") {
      s.geometry = Geometry::sphere(dim(r, geom, "r"), density);
    } else if (kind == "cylinder") {
      s.geometry = Geometry::cylinder(dim(r, geom, "r"), dim(r, geom, "l"), density);
    } else {
      r.fail("geometry.kind", "unknown kind '" + kind +
                                  "' (cuboid, cube, sphere, cylinder)");
    }
  } catch (const InvalidGeometry& e) {
    r.fail("geometry", e.what());
  }

  if (root.contains("lattice")) {
    const json& lat = r.object(root, "lattice", "lattice");
    LatticeSpec spec;
    spec.l = r.number(lat, "l", "lattice.l");
    spec.n_a = r.optional_number(lat, "n_a", "lattice.n_a");
    if (!(spec.l > 0.0)) r.fail("lattice.l", "lattice constant must be > 0");
    if (spec.n_a && !(*spec.n_a > 0.0)) r.fail("lattice.n_a", "must be > 0");
    s.lattice = spec;
  }

  const json& disp = r.object(root, "displacement", "displacement");
  s.displacement = {r.optional_number(disp, "dx", "displacement.dx").value_or(0.0),
                    r.optional_number(disp, "dy", "displacement.dy").value_or(0.0),
                    r.optional_number(disp, "dz", "displacement.dz").value_or(0.0)};
  if (!std::isfinite(s.displacement.magnitude())) {
    r.fail("displacement", "components must be finite");
  }
  return s;
}

LayerStack LayerScenario::resolved() const {
  if (stack) return *stack;
  return alternating->to_stack();
}

LayerScenario parse_layer_scenario(const std::string& text) {
  const Reader r(text);
  const json root = r.parse();
  if (!root.is_object()) r.fail("", "top level must be an object");
  LayerScenario s;
  s.params = r.params(root, false);
  s.density_unit = r.unit(root, "density_unit");
  if (root.contains("name")) s.name = r.string(root, "name", "name");
  const double d = r.number(root, "d", "d");
  auto density = [&](double v) { return to_nucleon_density(v, s.density_unit, s.params); };

  const bool has_layers = root.contains("layers");
  const bool has_alt = root.contains("alternating");
  if (has_layers == has_alt) {
    r.fail("layers", "exactly one of 'layers' or 'alternating' is required");
  }
  try {
    if (has_layers) {
      const json& list = root.at("layers");
      if (!list.is_array() || list.empty()) r.fail("layers", "expected a non-empty array");
      std::vector<Layer> layers;
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "layers[" + std::to_string(i) + "]";
        if (!list[i].is_object()) r.fail(path, "expected an object");
        layers.push_back({r.number(list[i], "thickness", path + ".thickness"),
                          density(r.number(list[i], "density", path + ".density"))});
      }
      s.stack = LayerStack(d, std::move(layers));
    } else {
      const json& alt = r.object(root, "alternating", "alternating");
      diffusion::AlternatingStack a;
      const double pairs = r.number(alt, "n_pairs", "alternating.n_pairs");
      if (pairs < 1.0 || pairs != std::floor(pairs)) {
        r.fail("alternating.n_pairs", "must be a positive integer");
      }
      a.n_pairs = static_cast<long>(pairs);
      a.l_odd = r.number(alt, "l_odd", "alternating.l_odd");
      a.l_even = r.number(alt, "l_even", "alternating.l_even");
      a.rho_odd = density(r.number(alt, "rho_odd", "alternating.rho_odd"));
      a.rho_even = density(r.number(alt, "rho_even", "alternating.rho_even"));
      a.d = d;
      (void)a.to_stack();  // validates thicknesses and densities
      s.alternating = a;
    }
  } catch (const InvalidGeometry& e) {
    r.fail(has_layers ? "layers" : "alternating", e.what());
  }
  return s;
}

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json out;
  out["params"] = {{"lambda", s.params.lambda},
                   {"r_c", s.params.r_c},
                   {"m_n", s.params.m_n},
                   {"rel_tol", s.params.rel_tol}};
  nlohmann::ordered_json geom;
  const Geometry& g = *s.geometry;
  geom["kind"] = std::string(g.kind());
  nlohmann::ordered_json dims;
  if (const auto* c = std::get_if<Cuboid>(&g.shape())) {
    dims = {{"lx", c->lx}, {"ly", c->ly}, {"lz", c->lz}};
  } else if (const auto* c = std::get_if<Cube>(&g.shape())) {
    dims = {{"l", c->l}};
  } else if (const auto* sp = std::get_if<Sphere>(&g.shape())) {
    dims = {{"r", sp->r}};
  } else {
    const auto& cy = std::get<Cylinder>(g.shape());
    dims = {{"r", cy.r}, {"l", cy.l}};
  }
  geom["dims"] = dims;
  geom["density"] = s.density_input;
  geom["density_unit"] = std::string(to_string(s.density_unit));
  out["geometry"] = geom;
  if (s.lattice) {
    out["lattice"]["l"] = s.lattice->l;
    if (s.lattice->n_a) out["lattice"]["n_a"] = *s.lattice->n_a;
  }
  out["displacement"] = {{"dx", s.displacement.dx},
                         {"dy", s.displacement.dy},
                         {"dz", s.displacement.dz}};
  return out;
}

}  // namespace csl::cli
