#include <doctest.h>

#include <cmath>
#include <numbers>

#include "csl/domain.hpp"
#include "csl/errors.hpp"

using namespace csl;

TEST_CASE("PhysParams validation") {
  PhysParams p;
  CHECK_NOTHROW(p.validate());
  p.lambda = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.r_c = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = {};
  p.rel_tol = 0.1;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("density units") {
  PhysParams p;
  CHECK(parse_density_unit("kg/m^3") == DensityUnit::KilogramsPerCubicMeter);
  CHECK(parse_density_unit("nucleons/m^3") == DensityUnit::NucleonsPerCubicMeter);
  CHECK_FALSE(parse_density_unit("g/cm^3").has_value());
  CHECK(to_nucleon_density(2.2e3, DensityUnit::KilogramsPerCubicMeter, p) ==
        doctest::Approx(2.2e3 / p.m_n));
  CHECK(to_nucleon_density(1e30, DensityUnit::NucleonsPerCubicMeter, p) == 1e30);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(Geometry::cube(0.0, 1e30), InvalidGeometry);
  CHECK_THROWS_AS(Geometry::cuboid(1.0, -1.0, 1.0, 1e30), InvalidGeometry);
  CHECK_THROWS_AS(Geometry::sphere(1.0, 0.0), InvalidGeometry);
  CHECK_THROWS_AS(Geometry::cylinder(1.0, NAN, 1.0), InvalidGeometry);
  CHECK(Geometry::cube(1.0, 1.0).box().has_value());
  CHECK_FALSE(Geometry::sphere(1.0, 1.0).box().has_value());
}

TEST_CASE("nucleon_count examples") {
  CHECK(nucleon_count(Geometry::cube(1e-6, 1e30)) == doctest::Approx(1e12).epsilon(1e-14));
  CHECK(nucleon_count(Geometry::sphere(1e-7, 1e30)) ==
        doctest::Approx(4.0 / 3.0 * std::numbers::pi * 1e9).epsilon(1e-14));
  CHECK(nucleon_count(Geometry::sphere(1e-7, 1e30)) == doctest::Approx(4.18879e9).epsilon(1e-5));
  CHECK(nucleon_count(Geometry::cylinder(1e-7, 1e-6, 1e30)) ==
        doctest::Approx(3.14159e10).epsilon(1e-5));
}

TEST_CASE("lattice_from_cuboid examples") {
  const Lattice a = lattice_from_cuboid(Geometry::cuboid(1e-6, 1e-6, 1e-6, 1e30), 1e-7, 1.0);
  CHECK(a.nx() == 10);
  CHECK(a.ny() == 10);
  CHECK(a.nz() == 10);
  CHECK(a.n_a() == 1.0);

  const Lattice b = lattice_from_cuboid(Geometry::cube(2e-7, 1e30), 1e-7, 5.0);
  CHECK(b.nx() == 2);
  CHECK(b.n_total() == 40.0);

  // 1.05e-6 / 1e-7 is not exactly 10.5 in binary64; the rule acts on the quotient.
  const Lattice c = lattice_from_cuboid(Geometry::cuboid(1.05e-6, 1e-6, 1e-6, 1e30), 1e-7);
  const double q = 1.05e-6 / 1e-7;
  CHECK(c.nx() == (q > 10.5 ? 11 : 10));
  CHECK(c.realized_box().lx == doctest::Approx(c.nx() * 1e-7));
}

TEST_CASE("lattice_from_cuboid rounds half to even") {
  CHECK(lattice_from_cuboid(Geometry::cuboid(1.25, 1.0, 1.0, 1.0), 0.5).nx() == 2);
  CHECK(lattice_from_cuboid(Geometry::cuboid(1.75, 1.0, 1.0, 1.0), 0.5).nx() == 4);
  CHECK(lattice_from_cuboid(Geometry::cuboid(0.75, 1.0, 1.0, 1.0), 0.5).nx() == 2);
}

TEST_CASE("lattice_from_cuboid: default n_a is density * l^3") {
  const Lattice lat = lattice_from_cuboid(Geometry::cube(1e-6, 1e30), 1e-8);
  CHECK(lat.n_a() == doctest::Approx(1e6));
  CHECK_THROWS_AS(lattice_from_cuboid(Geometry::sphere(1e-6, 1e30), 1e-8), InvalidGeometry);
  CHECK_THROWS_AS(lattice_from_cuboid(Geometry::cube(1e-6, 1e30), 2e-6), InvalidGeometry);
}

TEST_CASE("layer stack boundaries are cumulative") {
  const LayerStack s(1.0, {{1.0, 2.0}, {2.0, 0.0}, {0.5, 4.0}});
  REQUIRE(s.boundaries().size() == 4);
  CHECK(s.boundaries()[0] == 0.0);
  CHECK(s.boundaries()[1] == 1.0);
  CHECK(s.boundaries()[2] == 3.0);
  CHECK(s.total_length() == 3.5);
  CHECK(s.mean_density() == doctest::Approx((2.0 + 2.0) / 3.5));
  CHECK_FALSE(s.is_two_density_alternating());
  CHECK(LayerStack(1.0, {{1.0, 2.0}, {1.0, 1.0}, {1.0, 2.0}}).is_two_density_alternating());
  CHECK_THROWS_AS(LayerStack(1.0, {}), InvalidGeometry);
  CHECK_THROWS_AS(LayerStack(1.0, {{0.0, 1.0}}), InvalidGeometry);
  CHECK_THROWS_AS(LayerStack(1.0, {{1.0, -1.0}}), InvalidGeometry);
}

TEST_CASE("displacement helpers") {
  const Displacement d{3.0, 0.0, 4.0};
  CHECK(d.magnitude() == 5.0);
  CHECK(d.is_axis_aligned() == false);
  CHECK(Displacement::along_z(2.0).is_along_z());
  CHECK(Displacement{}.is_zero());
}
