#include "csl/lattice_rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "csl/compensated_sum.hpp"
#include "csl/errors.hpp"

namespace csl::lattice {

namespace {

// sqrt(ln 1e18): exp(-x^2) < 1e-18 beyond it.
const double kReachUnits = std::sqrt(std::log(1e18));

struct Range {
  long lo, hi;  // inclusive; empty when lo > hi
};

Range clip(double center, long reach, long n) {
  const double lo = std::max<double>(-(n - 1), std::ceil(center - reach));
  const double hi = std::min<double>(n - 1, std::floor(center + reach));
  if (lo > hi) return {1, 0};
  return {static_cast<long>(lo), static_cast<long>(hi)};
}

// e^{-x1} - e^{-x2} with x2 - x1 supplied directly, without cancellation.
double exp_difference(double x1, double gap) {
  if (gap >= 0.0) return -std::exp(-x1) * std::expm1(-gap);
  return std::exp(-(x1 + gap)) * std::expm1(gap);
}

}  // namespace

long truncation_reach(double l, double r_c) {
  return static_cast<long>(std::ceil(2.0 * r_c * kReachUnits / l));
}

AxisSum axis_sum(long n, double l, double delta, double r_c) {
  if (n < 1) throw InvalidGeometry("axis_sum: n must be >= 1");
  if (!(l > 0.0)) throw InvalidGeometry("axis_sum: l must be > 0");
  const double shift = delta / l;
  const double a = l * l / (4.0 * r_c * r_c);
  const Range range = clip(shift, truncation_reach(l, r_c), n);
  CompensatedSum sum;
  for (long m = range.lo; m <= range.hi; ++m) {
    const double u = static_cast<double>(m) - shift;
    sum += static_cast<double>(n - std::labs(m)) * std::exp(-a * u * u);
  }
  return {sum.value(), n, shift};
}

double axis_sum_drop(long n, double l, double delta, double r_c) {
  if (delta == 0.0) return 0.0;
  const double shift = delta / l;
  const double a = l * l / (4.0 * r_c * r_c);
  const long reach = truncation_reach(l, r_c);
  Range near_zero = clip(0.0, reach, n);
  Range near_shift = clip(shift, reach, n);
  // Merge overlapping windows so no diagonal is counted twice.
  std::array<Range, 2> windows = {near_zero, near_shift};
  if (near_shift.lo <= near_shift.hi && near_zero.lo <= near_zero.hi &&
      near_shift.lo <= near_zero.hi + 1 && near_zero.lo <= near_shift.hi + 1) {
    windows[0] = {std::min(near_zero.lo, near_shift.lo),
                  std::max(near_zero.hi, near_shift.hi)};
    windows[1] = {1, 0};
  }
  CompensatedSum sum;
  for (const Range& w : windows) {
    for (long m = w.lo; m <= w.hi; ++m) {
      const double md = static_cast<double>(m);
      const double x1 = a * md * md;
      // a (m - shift)^2 - a m^2 = a shift (shift - 2m)
      const double gap = a * shift * (shift - 2.0 * md);
      sum += static_cast<double>(n - std::labs(m)) * exp_difference(x1, gap);
    }
  }
  return sum.value();
}

RateResult gamma_discrete(const Lattice& lat, const Displacement& disp,
                          const PhysParams& params) {
  params.validate();
  const std::array<long, 3> counts = {lat.nx(), lat.ny(), lat.nz()};
  const std::array<double, 3> shifts = {disp.dx, disp.dy, disp.dz};
  std::array<double, 3> a{}, b{}, d{};
  for (int k = 0; k < 3; ++k) {
    a[k] = axis_sum(counts[k], lat.l(), 0.0, params.r_c).value;
    d[k] = axis_sum_drop(counts[k], lat.l(), shifts[k], params.r_c);
    b[k] = a[k] - d[k];
  }
  const double bracket = d[0] * a[1] * a[2] + b[0] * d[1] * a[2] + b[0] * b[1] * d[2];
  RateResult out;
  out.gamma = params.lambda * lat.n_a() * lat.n_a() * bracket;
  out.method = Method::Discrete;
  return out;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (n < 2 || sxx == 0.0) throw DegenerateFit("least_squares: x has no spread");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
  }
  fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

DropScan discrete_drop_scan(const Lattice& lat, std::span<const double> delta_grid,
                            const PhysParams& params) {
  for (std::size_t i = 1; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] > delta_grid[i - 1])) {
      throw DomainError("discrete_drop_scan: grid must be strictly increasing");
    }
  }
  DropScan scan;
  scan.points.reserve(delta_grid.size());
  for (double delta : delta_grid) {
    scan.points.emplace_back(
        delta, gamma_discrete(lat, Displacement::along_z(delta), params).gamma);
  }
  const double half_cell = 0.5 * lat.l();
  const auto& pts = scan.points;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double v = pts[i].second;
    if (!(v < pts[i - 1].second && v <= pts[i + 1].second)) continue;
    double local_max = v;
    for (std::size_t j = i; j-- > 0 && pts[i].first - pts[j].first <= half_cell;) {
      local_max = std::max(local_max, pts[j].second);
    }
    for (std::size_t j = i + 1; j < pts.size() && pts[j].first - pts[i].first <= half_cell;
         ++j) {
      local_max = std::max(local_max, pts[j].second);
    }
    if (v < (1.0 - 1e-9) * local_max) scan.minima.push_back(i);
  }
  if (scan.minima.size() < 3) {
    throw DegenerateFit("discrete_drop_scan: found " +
                        std::to_string(scan.minima.size()) +
                        " minima, need at least 3");
  }
  std::vector<double> x, y;
  for (std::size_t i : scan.minima) {
    x.push_back(pts[i].first);
    y.push_back(pts[i].second);
  }
  scan.fit = least_squares(x, y);
  return scan;
}

}  // namespace csl::lattice
