#include "csl/continuum_rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <variant>

#include "csl/errors.hpp"
#include "csl/quadrature.hpp"
#include "csl/specfun.hpp"

namespace csl::continuum {

namespace {

using std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Beyond this many units of 2 r_c a Gaussian factor is below e^{-81}.
constexpr double kGaussReach = 9.0;
constexpr double kPanelWidth = 0.5;

// phi(s) = s^2 g(2 r_c s).
double phi(double s) {
  return std::expm1(-s * s) + kSqrtPi * s * specfun::erf(s);
}

// F(t) = 2e^{-t^2} - e^{-(p+t)^2} - e^{-(p-t)^2}.
double second_difference_kernel(double p, double t) {
  if (p < 1.0 && p * t < 1.0) {
    const double sh = std::sinh(p * t);
    return 2.0 * std::exp(-t * t) *
           (-std::expm1(-p * p) - 2.0 * std::exp(-p * p) * sh * sh);
  }
  return 2.0 * std::exp(-t * t) - std::exp(-(p + t) * (p + t)) -
         std::exp(-(p - t) * (p - t));
}

// int_0^q (q - t) F_p(t) dt, restricted to where F is not negligible.
double mass_difference_unit(double p, double q) {
  std::array<std::pair<double, double>, 2> windows = {
      std::pair{0.0, std::min(q, kGaussReach)},
      std::pair{std::max(0.0, p - kGaussReach), std::min(q, p + kGaussReach)}};
  if (windows[1].first <= windows[0].second) {
    windows[0].second = std::max(windows[0].second, windows[1].second);
    windows[1] = {0.0, 0.0};
  }
  auto integrand = [p, q](double t) {
    return (q - t) * second_difference_kernel(p, t);
  };
  double total = 0.0;
  for (const auto& [a, b] : windows) {
    if (!(b > a)) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / kPanelWidth)));
    total += quad::composite_gauss_legendre(integrand, a, b, panels, 16);
  }
  return total;
}

// (1/p^2) int_{-p}^{p} (p - |t|) e^{-(t-q)^2} dt; every term positive.
double g_shifted_direct(double p, double q, double rel_tol) {
  auto integrand = [p, q](double t) {
    return (p - t) * (std::exp(-(t - q) * (t - q)) + std::exp(-(t + q) * (t + q)));
  };
  std::vector<double> cuts = {0.0, p};
  for (double c : {q - kGaussReach, q, q + kGaussReach}) {
    if (c > 0.0 && c < p) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = quad::integrate(integrand, cuts[i], cuts[i + 1], rel_tol);
    total += r.value;
  }
  return total / (p * p);
}

std::array<double, 3> axis_lengths(const Cuboid& c) { return {c.lx, c.ly, c.lz}; }

Cuboid require_box(const Geometry& geom, const char* op) {
  const auto box = geom.box();
  if (!box) {
    throw InvalidGeometry(std::string(op) + " needs a cuboid or cube, got " +
                          std::string(geom.kind()));
  }
  return *box;
}

double r_c_sphere_count(const Geometry& geom, const PhysParams& params) {
  const double r = params.r_c;
  return geom.density_n() * 4.0 / 3.0 * pi * r * r * r;
}

}  // namespace

double g_factor(double x, double r_c) {
  const double s = std::abs(x) / (2.0 * r_c);
  if (std::abs(x) < 1e-3 * r_c) {
    const double s2 = s * s;
    return 1.0 - s2 / 6.0 + s2 * s2 / 30.0;
  }
  return phi(s) / (s * s);
}

double g_weighted(double x, double r_c) {
  const double s = std::abs(x) / (2.0 * r_c);
  return 4.0 * r_c * r_c * phi(s);
}

double mass_difference(double length, double delta, double r_c) {
  const double p = std::abs(length) / (2.0 * r_c);
  const double q = std::abs(delta) / (2.0 * r_c);
  if (p == 0.0 || q == 0.0) return 0.0;
  // The integral is symmetric in (p, q); integrate over the shorter range.
  const double lo = std::min(p, q);
  const double hi = std::max(p, q);
  return 4.0 * r_c * r_c * mass_difference_unit(hi, lo);
}

double g_difference(double length, double delta, double r_c) {
  return mass_difference(length, delta, r_c) / (length * length);
}

double g_shifted(double length, double delta, double r_c) {
  const double g = g_factor(length, r_c);
  const double diff = g_difference(length, delta, r_c);
  if (diff <= 0.5 * g) return g - diff;
  return g_shifted_direct(std::abs(length) / (2.0 * r_c),
                          std::abs(delta) / (2.0 * r_c), 1e-14);
}

double axial_small_delta_factor(double length, double r_c) {
  const double x = length / (2.0 * r_c);
  return -std::expm1(-x * x) / (length * length);
}

double disk_factor(double radius, double r_c) {
  const double z = radius * radius / (2.0 * r_c * r_c);
  double c = 0.0;
  if (z < 0.5) {
    // e^{-z} I_0 = M(1/2, 1, -2z), e^{-z} I_1 = (z/2) M(3/2, 3, -2z).
    const double x = -2.0 * z;
    double t0 = 1.0;
    double s0 = 0.0;
    double t1 = 1.0;
    double s1 = 1.0;
    for (int k = 1; k < 60; ++k) {
      t0 *= (k - 0.5) * x / (static_cast<double>(k) * k);
      s0 += t0;
      t1 *= (k + 0.5) * x / ((k + 2.0) * k);
      s1 += t1;
      if (std::abs(t0) + std::abs(t1) < 1e-18 * z) break;
    }
    c = -s0 - 0.5 * z * s1;
  } else {
    c = 1.0 - (specfun::bessel_i_scaled(0, z) + specfun::bessel_i_scaled(1, z));
  }
  return 2.0 * c / z;
}

double sphere_small_delta_factor(double radius, double r_c) {
  const double y = radius * radius / (r_c * r_c);
  double b = 0.0;
  if (y < 2.0) {
    double term = y * y * y / 6.0;  // y^k / k! at k = 3
    for (int k = 3; k < 80; ++k) {
      const double c = ((k % 2 == 0) ? -1.0 : 1.0) * (k - 2) / 2.0;
      b += c * term;
      term *= y / (k + 1);
      if (term * k < 1e-18 * std::abs(b)) break;
    }
  } else {
    const double e = std::exp(-y);
    b = std::expm1(-y) + 0.5 * y * (e + 1.0);
  }
  return 3.0 * b / (y * y * y * r_c * r_c);
}

double overlap_volume(const Geometry& geom, const Displacement& disp) {
  if (const auto box = geom.box()) {
    return std::max(0.0, box->lx - std::abs(disp.dx)) *
           std::max(0.0, box->ly - std::abs(disp.dy)) *
           std::max(0.0, box->lz - std::abs(disp.dz));
  }
  if (const auto* s = std::get_if<Sphere>(&geom.shape())) {
    const double d = disp.magnitude();
    if (d >= 2.0 * s->r) return 0.0;
    const double gap = 2.0 * s->r - d;
    return pi * (4.0 * s->r + d) * gap * gap / 12.0;
  }
  const auto& c = std::get<Cylinder>(geom.shape());
  const double axial = std::max(0.0, c.l - std::abs(disp.dz));
  const double rho = std::hypot(disp.dx, disp.dy);
  if (rho >= 2.0 * c.r) return 0.0;
  const double area = 2.0 * c.r * c.r * std::acos(rho / (2.0 * c.r)) -
                      0.5 * rho * std::sqrt(4.0 * c.r * c.r - rho * rho);
  return area * axial;
}

RateResult gamma_cuboid(const Geometry& geom, const Displacement& disp,
                        const PhysParams& params) {
  params.validate();
  const Cuboid box = require_box(geom, "gamma_cuboid");
  const auto lengths = axis_lengths(box);
  const std::array<double, 3> shifts = {disp.dx, disp.dy, disp.dz};
  std::array<double, 3> a{}, b{}, d{};
  for (int k = 0; k < 3; ++k) {
    a[k] = g_factor(lengths[k], params.r_c);
    d[k] = g_difference(lengths[k], shifts[k], params.r_c);
    b[k] = a[k] - d[k];
  }
  // a0 a1 a2 - b0 b1 b2 as a sum of nonnegative pieces.
  const double bracket = d[0] * a[1] * a[2] + b[0] * d[1] * a[2] + b[0] * b[1] * d[2];
  const double n = nucleon_count(geom);
  RateResult out;
  out.gamma = params.lambda * n * n * bracket;
  out.method = Method::ContinuousExact;
  return out;
}

RateResult gamma_small_delta(const Geometry& geom, const Displacement& disp,
                             const PhysParams& params) {
  params.validate();
  const double r = params.r_c;
  const double delta = disp.magnitude();
  const double n = nucleon_count(geom);
  double shape_factor = 0.0;
  if (const auto* s = std::get_if<Sphere>(&geom.shape())) {
    shape_factor = sphere_small_delta_factor(s->r, r);
  } else {
    if (!disp.is_along_z()) {
      throw UnsupportedDisplacement(
          "gamma_small_delta: " + std::string(geom.kind()) +
          " requires a displacement along z");
    }
    if (const auto box = geom.box()) {
      shape_factor = g_factor(box->lx, r) * g_factor(box->ly, r) *
                     axial_small_delta_factor(box->lz, r);
    } else {
      const auto& c = std::get<Cylinder>(geom.shape());
      shape_factor = disk_factor(c.r, r) * axial_small_delta_factor(c.l, r);
    }
  }
  RateResult out;
  out.gamma = params.lambda * n * n * shape_factor * delta * delta;
  out.method = Method::ContinuousSmallDelta;
  out.validity.push_back({"small_delta", delta <= 0.1 * r, "delta <= 0.1 r_c"});
  return out;
}

RateResult gamma_gpr(const Geometry& geom, const Displacement& disp,
                     const PhysParams& params) {
  params.validate();
  const double r = params.r_c;
  const double n = r_c_sphere_count(geom, params);
  const double n_out =
      geom.density_n() * std::max(0.0, geom.volume() - overlap_volume(geom, disp));
  const double delta = disp.magnitude();
  RateResult out;
  out.gamma = 6.0 * kSqrtPi * params.lambda * n * n_out;
  out.method = Method::GPR;
  out.validity.push_back({"size_regime", geom.characteristic_radius() >= 10.0 * r,
                          "R >> r_c (R >= 10 r_c)"});
  out.validity.push_back(
      {"delta_regime", delta >= 10.0 * r, "delta >> r_c (delta >= 10 r_c)"});
  return out;
}

RateResult gamma_adler(const Geometry& geom, const Displacement& disp,
                       const PhysParams& params) {
  params.validate();
  const double r = params.r_c;
  const double n_tot = nucleon_count(geom);
  const double n = std::min(n_tot, r_c_sphere_count(geom, params));
  const double clusters = n_tot / n;
  const double delta = disp.magnitude();
  const double branch = (delta <= r) ? delta * delta / (2.0 * r * r) : 1.0;
  RateResult out;
  out.gamma = params.lambda * n * n * clusters * branch;
  out.method = Method::Adler;
  out.validity.push_back({"delta_regime", !(delta > 0.1 * r && delta < 10.0 * r),
                          "delta << r_c (<= 0.1 r_c) or delta >> r_c (>= 10 r_c)"});
  out.validity.push_back({"overlap_regime", overlap_volume(geom, disp) == 0.0,
                          "delta > 2R (displaced copies do not overlap)"});
  return out;
}

}  // namespace csl::continuum
