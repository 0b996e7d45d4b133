#include "csl/domain.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <numbers>

#include "csl/errors.hpp"

namespace csl {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

long round_half_even(double ratio) {
  // Snap near-half-integers so binary64 noise does not decide the rounding.
  const double twice = 2.0 * ratio;
  const double nearest_half = std::nearbyint(twice);
  if (std::abs(twice - nearest_half) <= 1e-9 * std::abs(twice)) {
    ratio = 0.5 * nearest_half;
  }
  const int old_mode = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(ratio);
  std::fesetround(old_mode);
  return static_cast<long>(r);
}

}  // namespace

void PhysParams::validate() const {
  if (!positive_finite(lambda)) throw DomainError("lambda must be > 0");
  if (!positive_finite(r_c)) throw DomainError("r_c must be > 0");
  if (!positive_finite(m_n)) throw DomainError("m_n must be > 0");
  if (!(rel_tol > 0.0 && rel_tol < 1e-3)) {
    throw DomainError("rel_tol must lie in (0, 1e-3)");
  }
}

std::optional<DensityUnit> parse_density_unit(std::string_view text) {
  if (text == "nucleons/m^3" || text == "nucleons/m3" || text == "nucleons") {
    return DensityUnit::NucleonsPerCubicMeter;
  }
  if (text == "kg/m^3" || text == "kg/m3") {
    return DensityUnit::KilogramsPerCubicMeter;
  }
  return std::nullopt;
}

std::string_view to_string(DensityUnit unit) {
  switch (unit) {
    case DensityUnit::NucleonsPerCubicMeter:
      return "nucleons/m^3";
    case DensityUnit::KilogramsPerCubicMeter:
      return "kg/m^3";
  }
  return "?";
}

double to_nucleon_density(double value, DensityUnit unit,
                          const PhysParams& params) {
  if (unit == DensityUnit::KilogramsPerCubicMeter) return value / params.m_n;
  return value;
}

Geometry::Geometry(Shape shape, double density_n)
    : shape_(shape), density_n_(density_n) {
  if (!positive_finite(density_n)) {
    throw InvalidGeometry("density must be > 0");
  }
  const bool ok = std::visit(
      overloaded{
          [](const Cuboid& c) {
            return positive_finite(c.lx) && positive_finite(c.ly) &&
                   positive_finite(c.lz);
          },
          [](const Cube& c) { return positive_finite(c.l); },
          [](const Sphere& s) { return positive_finite(s.r); },
          [](const Cylinder& c) {
            return positive_finite(c.r) && positive_finite(c.l);
          },
      },
      shape_);
  if (!ok) throw InvalidGeometry("all body dimensions must be > 0");
}

std::string_view Geometry::kind() const {
  return std::visit(overloaded{
                        [](const Cuboid&) { return std::string_view("cuboid"); },
                        [](const Cube&) { return std::string_view("cube"); },
                        [](const Sphere&) { return std::string_view("sphere"); },
                        [](const Cylinder&) {
                          return std::string_view("cylinder");
                        },
                    },
                    shape_);
}

double Geometry::volume() const {
  using std::numbers::pi;
  return std::visit(
      overloaded{
          [](const Cuboid& c) { return c.lx * c.ly * c.lz; },
          [](const Cube& c) { return c.l * c.l * c.l; },
          [](const Sphere& s) { return 4.0 / 3.0 * pi * s.r * s.r * s.r; },
          [](const Cylinder& c) { return pi * c.r * c.r * c.l; },
      },
      shape_);
}

std::optional<Cuboid> Geometry::box() const {
  if (const auto* c = std::get_if<Cuboid>(&shape_)) return *c;
  if (const auto* c = std::get_if<Cube>(&shape_)) return Cuboid{c->l, c->l, c->l};
  return std::nullopt;
}

double Geometry::extent_z() const {
  return std::visit(overloaded{
                        [](const Cuboid& c) { return c.lz; },
                        [](const Cube& c) { return c.l; },
                        [](const Sphere& s) { return 2.0 * s.r; },
                        [](const Cylinder& c) { return c.l; },
                    },
                    shape_);
}

double Geometry::characteristic_radius() const {
  return std::visit(
      overloaded{
          [](const Cuboid& c) { return 0.5 * std::min({c.lx, c.ly, c.lz}); },
          [](const Cube& c) { return 0.5 * c.l; },
          [](const Sphere& s) { return s.r; },
          [](const Cylinder& c) { return std::min(c.r, 0.5 * c.l); },
      },
      shape_);
}

double nucleon_count(const Geometry& geom) {
  return geom.density_n() * geom.volume();
}

double Displacement::magnitude() const { return std::hypot(dx, dy, dz); }

bool Displacement::is_axis_aligned() const {
  const int nonzero = (dx != 0.0) + (dy != 0.0) + (dz != 0.0);
  return nonzero <= 1;
}

Lattice::Lattice(double l, long nx, long ny, long nz, double n_a)
    : l_(l), nx_(nx), ny_(ny), nz_(nz), n_a_(n_a) {
  if (!positive_finite(l)) throw InvalidGeometry("lattice constant must be > 0");
  if (nx < 1 || ny < 1 || nz < 1) {
    throw InvalidGeometry("lattice site counts must be >= 1");
  }
  if (!positive_finite(n_a)) {
    throw InvalidGeometry("nucleons per site must be > 0");
  }
}

Cuboid Lattice::realized_box() const {
  return {static_cast<double>(nx_) * l_, static_cast<double>(ny_) * l_,
          static_cast<double>(nz_) * l_};
}

Lattice lattice_from_cuboid(const Geometry& geom, double l,
                            std::optional<double> n_a) {
  const auto box = geom.box();
  if (!box) {
    throw InvalidGeometry("lattice_from_cuboid needs a cuboid, got " +
                          std::string(geom.kind()));
  }
  if (!positive_finite(l)) throw InvalidGeometry("lattice constant must be > 0");
  if (l > std::min({box->lx, box->ly, box->lz})) {
    throw InvalidGeometry("lattice constant exceeds a side of the body");
  }
  const double per_site = n_a.value_or(geom.density_n() * l * l * l);
  return Lattice(l, std::max(1L, round_half_even(box->lx / l)),
                 std::max(1L, round_half_even(box->ly / l)),
                 std::max(1L, round_half_even(box->lz / l)), per_site);
}

LayerStack::LayerStack(double d, std::vector<Layer> layers)
    : d_(d), layers_(std::move(layers)) {
  if (!positive_finite(d)) throw InvalidGeometry("layer stack side must be > 0");
  if (layers_.empty()) throw InvalidGeometry("layer stack has no layers");
  boundaries_.reserve(layers_.size() + 1);
  boundaries_.push_back(0.0);
  for (const Layer& layer : layers_) {
    if (!positive_finite(layer.thickness)) {
      throw InvalidGeometry("layer thickness must be > 0");
    }
    if (!(std::isfinite(layer.density_n) && layer.density_n >= 0.0)) {
      throw InvalidGeometry("layer density must be >= 0");
    }
    boundaries_.push_back(boundaries_.back() + layer.thickness);
  }
}

double LayerStack::mean_density() const {
  double mass = 0.0;
  for (const Layer& layer : layers_) mass += layer.thickness * layer.density_n;
  return mass / total_length();
}

bool LayerStack::is_two_density_alternating() const {
  if (layers_.size() < 2) return false;
  for (std::size_t i = 2; i < layers_.size(); ++i) {
    if (layers_[i].density_n != layers_[i - 2].density_n) return false;
  }
  return true;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::ContinuousExact:
      return "continuous";
    case Method::ContinuousSmallDelta:
      return "small-delta";
    case Method::Discrete:
      return "discrete";
    case Method::GPR:
      return "gpr";
    case Method::Adler:
      return "adler";
  }
  return "?";
}

bool RateResult::all_valid() const {
  return std::all_of(validity.begin(), validity.end(),
                     [](const ValidityFlag& f) { return f.satisfied; });
}

const ValidityFlag* RateResult::flag(std::string_view name) const {
  for (const auto& f : validity) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace csl
