#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

/// Value types shared by every rate and diffusion computation.
///
/// Lengths are meters, rates s^-1. Densities are stored as nucleon number
/// densities (nucleons/m^3); kg/m^3 inputs are divided by the nucleon mass
/// when a value is ingested, so the nucleon mass never enters a rate.
namespace csl {

struct PhysParams {
  double lambda = 1e-8;       // collapse rate, s^-1
  double r_c = 1e-7;          // localization distance, m
  double m_n = 1.6749e-27;    // nucleon mass, kg
  double rel_tol = 1e-10;     // internal quadrature tolerance

  /// Throws DomainError unless lambda, r_c, m_n > 0 and rel_tol in (0, 1e-3).
  void validate() const;
};

enum class DensityUnit { NucleonsPerCubicMeter, KilogramsPerCubicMeter };

std::optional<DensityUnit> parse_density_unit(std::string_view text);
std::string_view to_string(DensityUnit unit);

/// Converts a density given in `unit` to nucleons/m^3.
double to_nucleon_density(double value, DensityUnit unit,
                          const PhysParams& params);

struct Cuboid {
  double lx = 0.0;
  double ly = 0.0;
  double lz = 0.0;
};

struct Cube {
  double l = 0.0;
};

struct Sphere {
  double r = 0.0;
};

/// Circular cylinder with its symmetry axis along z.
struct Cylinder {
  double r = 0.0;
  double l = 0.0;
};

using Shape = std::variant<Cuboid, Cube, Sphere, Cylinder>;

/// Homogeneous body: one of the supported shapes plus a uniform nucleon
/// number density. Immutable after construction.
class Geometry {
 public:
  /// Throws InvalidGeometry on non-positive dimensions or density.
  Geometry(Shape shape, double density_n);

  static Geometry cuboid(double lx, double ly, double lz, double density_n) {
    return Geometry(Cuboid{lx, ly, lz}, density_n);
  }
  static Geometry cube(double l, double density_n) {
    return Geometry(Cube{l}, density_n);
  }
  static Geometry sphere(double r, double density_n) {
    return Geometry(Sphere{r}, density_n);
  }
  static Geometry cylinder(double r, double l, double density_n) {
    return Geometry(Cylinder{r, l}, density_n);
  }

  const Shape& shape() const { return shape_; }
  double density_n() const { return density_n_; }
  std::string_view kind() const;
  double volume() const;

  /// Cuboid view of the body (cubes included), or nullopt.
  std::optional<Cuboid> box() const;

  /// Extent of the body along z (cuboid lz, cylinder l, sphere 2r).
  double extent_z() const;

  /// Half of the smallest extent; the "R" of the literature regime table.
  double characteristic_radius() const;

 private:
  Shape shape_;
  double density_n_;
};

double nucleon_count(const Geometry& geom);

struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  static Displacement along_z(double d) { return {0.0, 0.0, d}; }

  double magnitude() const;
  bool is_zero() const { return dx == 0.0 && dy == 0.0 && dz == 0.0; }
  bool is_along_z() const { return dx == 0.0 && dy == 0.0; }
  /// Non-zero along at most one axis.
  bool is_axis_aligned() const;
};

/// Simple cubic crystal of lattice constant l with nx * ny * nz sites and
/// n_a nucleons per site.
class Lattice {
 public:
  Lattice(double l, long nx, long ny, long nz, double n_a);

  double l() const { return l_; }
  long nx() const { return nx_; }
  long ny() const { return ny_; }
  long nz() const { return nz_; }
  double n_a() const { return n_a_; }

  long double n_sites() const {
    return static_cast<long double>(nx_) * ny_ * nz_;
  }
  double n_total() const { return static_cast<double>(n_a_ * n_sites()); }

  /// Cuboid actually spanned by the sites: n_alpha * l per axis.
  Cuboid realized_box() const;

 private:
  double l_;
  long nx_, ny_, nz_;
  double n_a_;
};

/// Discretizes a cuboid (or cube) on a lattice of constant l.
/// Site counts are round-half-to-even of L_alpha / l; ratios within 1e-9 of
/// a half-integer are snapped to it first so that decimal inputs such as
/// 1.05e-6 / 1e-7 round reproducibly (to 10). When n_a is omitted it is
/// density_n * l^3. Throws InvalidGeometry for other shapes or l larger than
/// a side.
Lattice lattice_from_cuboid(const Geometry& geom, double l,
                            std::optional<double> n_a = std::nullopt);

struct Layer {
  double thickness = 0.0;  // m
  double density_n = 0.0;  // nucleons/m^3
};

/// Ordered layers stacked along z on a square cross-section of side d.
class LayerStack {
 public:
  LayerStack(double d, std::vector<Layer> layers);

  double d() const { return d_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::size_t size() const { return layers_.size(); }

  /// Cumulative boundaries z_0 = 0 < z_1 < ... < z_n = total length.
  const std::vector<double>& boundaries() const { return boundaries_; }
  double total_length() const { return boundaries_.back(); }

  /// Thickness-weighted mean nucleon density.
  double mean_density() const;

  /// Two densities alternating layer by layer (first layer "odd").
  bool is_two_density_alternating() const;

 private:
  double d_;
  std::vector<Layer> layers_;
  std::vector<double> boundaries_;
};

enum class Method { ContinuousExact, ContinuousSmallDelta, Discrete, GPR, Adler };

std::string_view to_string(Method m);

struct ValidityFlag {
  std::string name;
  bool satisfied = true;
  std::string requirement;
};

struct RateResult {
  double gamma = 0.0;
  Method method = Method::ContinuousExact;
  std::vector<ValidityFlag> validity;
  std::optional<double> error_estimate;

  bool all_valid() const;
  const ValidityFlag* flag(std::string_view name) const;
};

}  // namespace csl
