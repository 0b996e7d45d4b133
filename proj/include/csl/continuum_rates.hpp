#pragma once

#include "csl/domain.hpp"

/// Collapse rates of homogeneous continuous bodies.
///
/// g(x) is the Gaussian self-correlation of a uniform segment of length x,
/// g_delta(L) its correlation with a copy displaced by delta. Every kernel
/// works in the dimensionless ratio x / (2 r_c).
namespace csl::continuum {

/// g(x) = (4 r_c^2/x^2)(e^{-x^2/4r_c^2} - 1 + sqrt(pi) (x/2r_c) erf(x/2r_c)).
/// Even in x; Taylor form below x/r_c = 1e-3.
double g_factor(double x, double r_c);

/// G(x) = x^2 g(x).
double g_weighted(double x, double r_c);

/// g_delta(L) = [G(L - delta)/2 + G(L + delta)/2 - G(delta)] / L^2.
/// Computed as g(L) - mass_difference / L^2 so that it is exactly g(L) at
/// delta = 0 and never loses the small difference to rounding.
double g_shifted(double length, double delta, double r_c);

/// L^2 [g(L) - g_delta(L)] (units m^2), the mass-difference kernel.
///
/// Evaluated as 4 r_c^2 int_0^q (q - t) F(t) dt with p = L/2r_c,
/// q = delta/2r_c and F(t) = 2e^{-t^2} - e^{-(p+t)^2} - e^{-(p-t)^2}; this
/// form has no cancellation for any L, delta. Symmetric in (L, delta),
/// nonnegative, zero iff L or delta is zero.
double mass_difference(double length, double delta, double r_c);

/// g(L) - g_delta(L).
double g_difference(double length, double delta, double r_c);

/// (1 - e^{-L^2/4r_c^2}) / L^2, the z-factor of the small-delta rate.
double axial_small_delta_factor(double length, double r_c);

/// (4 r_c^2/R^2)[1 - e^{-z}(I_0(z) + I_1(z))], z = R^2/2r_c^2.
double disk_factor(double radius, double r_c);

/// (3 r_c^4/R^6)[e^{-y} - 1 + (y/2)(e^{-y} + 1)], y = R^2/r_c^2 (units 1/m^2).
double sphere_small_delta_factor(double radius, double r_c);

/// Volume shared by the body and its copy displaced by disp (m^3).
/// Cylinders accept any displacement; spheres any direction.
double overlap_volume(const Geometry& geom, const Displacement& disp);

/// Exact rate of a cuboid (or cube) for an arbitrary displacement vector.
/// Throws InvalidGeometry for other shapes.
RateResult gamma_cuboid(const Geometry& geom, const Displacement& disp,
                        const PhysParams& params);

/// Leading order in delta. Cuboids and cylinders need delta along z
/// (UnsupportedDisplacement otherwise); spheres accept any direction.
/// Flag "small_delta" is violated for delta/r_c > 0.1.
RateResult gamma_small_delta(const Geometry& geom, const Displacement& disp,
                             const PhysParams& params);

/// 6 sqrt(pi) lambda n N_out. Flags "size_regime" (R >= 10 r_c) and
/// "delta_regime" (delta >= 10 r_c).
RateResult gamma_gpr(const Geometry& geom, const Displacement& disp,
                     const PhysParams& params);

/// lambda n^2 N times delta^2/2r_c^2 (delta <= r_c) or 1 (delta > r_c).
/// n is the nucleon count of an r_c sphere, capped at N_tot. Flags
/// "delta_regime" (violated for 0.1 r_c < delta < 10 r_c) and
/// "overlap_regime" (violated while the two copies overlap).
RateResult gamma_adler(const Geometry& geom, const Displacement& disp,
                       const PhysParams& params);

}  // namespace csl::continuum
