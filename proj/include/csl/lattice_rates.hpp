#pragma once

#include <span>
#include <utility>
#include <vector>

#include "csl/domain.hpp"

/// Collapse rate of a point-like mass distribution on a simple cubic
/// lattice. The pair sum factorizes per axis; each axis sum is collapsed to
/// its diagonals, sum_m (n - |m|) exp(-l^2 (m - delta)^2 / 4 r_c^2).
namespace csl::lattice {

struct AxisSum {
  double value = 0.0;
  long n_sites = 0;
  double shift = 0.0;  // delta / l
};

/// Diagonals farther than this many sites from the Gaussian center carry
/// weight below 1e-18 and are skipped.
long truncation_reach(double l, double r_c);

AxisSum axis_sum(long n, double l, double delta, double r_c);

/// S(0) - S(delta) accumulated term by term, so the result keeps full
/// relative precision even when the two sums nearly coincide.
double axis_sum_drop(long n, double l, double delta, double r_c);

/// lambda n_a^2 [S_x(0) S_y(0) S_z(0) - S_x(d_x) S_y(d_y) S_z(d_z)].
RateResult gamma_discrete(const Lattice& lat, const Displacement& disp,
                          const PhysParams& params);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct DropScan {
  std::vector<std::pair<double, double>> points;  // (delta, gamma)
  std::vector<std::size_t> minima;                // indices into points
  LinearFit fit;                                  // through the minima
};

/// Evaluates gamma_discrete for displacements along z on a strictly
/// increasing grid, locates the local minima and fits a line through them.
/// A minimum must undercut the largest value within half a lattice constant
/// by a relative 1e-9, which ignores rounding ripple on flat stretches.
/// Throws DegenerateFit with fewer than three minima.
DropScan discrete_drop_scan(const Lattice& lat, std::span<const double> delta_grid,
                            const PhysParams& params);

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

}  // namespace csl::lattice
