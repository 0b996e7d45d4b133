#include <doctest.h>

#include <cmath>
#include <vector>

#include "csl/errors.hpp"
#include "csl/euler_maclaurin.hpp"
#include "csl/lattice_rates.hpp"
#include "csl/specfun.hpp"
#include "oracle_math.hpp"

using namespace csl;
using namespace csl::em;

namespace {
constexpr double r = 1e-7;

DerivativeFn power(int k) {
  return [k](int order, double x) {
    if (order > k) return 0.0;
    double c = 1.0;
    for (int j = 0; j < order; ++j) c *= (k - j);
    return c * std::pow(x, k - order);
  };
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return lattice::least_squares(lx, ly).slope;
}
}  // namespace

TEST_CASE("em_sum_generic is exact on low-degree polynomials") {
  const auto lin = em_sum_generic(power(1), 4, 10, 1);
  CHECK(lin.estimate == doctest::Approx(55.0).epsilon(1e-13));
  CHECK(lin.remainder_bound == 0.0);
  const auto cube = em_sum_generic(power(3), 6, 10, 2);
  CHECK(cube.estimate == doctest::Approx(3025.0).epsilon(1e-13));
  CHECK(cube.remainder_bound == 0.0);
}

TEST_CASE("em_sum_generic: Gaussian within its remainder bound") {
  const double s = 5.0;
  const DerivativeFn f = [s](int k, double x) { return specfun::gaussian_derivative(k, x, s); };
  double direct = 0.0;
  for (int i = 1; i <= 50; ++i) direct += std::exp(-i * i / (s * s));
  const auto res = em_sum_generic(f, specfun::max_gaussian_derivative_order, 50, 0);
  CHECK(std::abs(res.estimate - direct) <= res.remainder_bound);
  CHECK(res.order == 0);
}

TEST_CASE("em_sum_generic: order checks") {
  CHECK_THROWS_AS(em_sum_generic(power(1), 1, 10, 0), UnsupportedOrder);
  CHECK_THROWS_AS(em_sum_generic(power(1), 12, 10, 7), UnsupportedOrder);
  CHECK_THROWS_AS(em_sum_generic(power(1), 12, 10, -1), UnsupportedOrder);
  CHECK_NOTHROW(em_sum_generic(power(1), 14, 10, 6));
}

TEST_CASE("remainder bound honesty on random Gaussians") {
  oracle::Rng rng(77);
  int failures = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    // sum over lattice points i l of exp(-(i l - c)^2 / 4 r^2), in units of l.
    const double l = r * rng.uniform(0.05, std::sqrt(2.0));
    const double s = 2.0 * r / l;
    const double c = rng.uniform(-3.0, 3.0) * s;
    const long n = rng.integer(2, 200);
    const int p = rng.integer(0, 3);
    const DerivativeFn f = [s, c](int k, double x) {
      return specfun::gaussian_derivative(k, x - c, s);
    };
    const auto res = em_sum_generic(f, specfun::max_gaussian_derivative_order, n, p);
    long double direct = 0.0L;
    for (long i = 1; i <= n; ++i) direct += std::exp(-std::pow((i - c) / s, 2));
    if (std::abs(res.estimate - static_cast<double>(direct)) >
        res.remainder_bound + 1e-13 * static_cast<double>(direct)) {
      ++failures;
    }
  }
  MESSAGE("remainder bound exceeded in " << failures << " of " << trials << " cases");
  CHECK(failures <= trials / 100);
}

TEST_CASE("em_gaussian_double_sum: structure") {
  const auto e = em_gaussian_double_sum(1000, 1e-2 * r, 0.0, r);
  CHECK(e.error_order == doctest::Approx(0.5e-4));
  CHECK(e.continuum_term > 0.0);
  CHECK(e.order == 2);
  CHECK(em_gaussian_double_sum(10, 2 * r, 0.0, r).order == 0);
  // Delta = 0: B_2 (1 - e^{-L^2/4 r_c^2}).
  const double L = 1000 * 1e-2 * r;
  CHECK(e.boundary_term ==
        doctest::Approx(boundary_coefficient * -std::expm1(-L * L / (4 * r * r))).epsilon(1e-14));
  // Long body: exponentials underflow, boundary -> B_2.
  CHECK(em_gaussian_double_sum(100000, r, 0.0, r).boundary_term == boundary_coefficient);
  CHECK_THROWS_AS(em_gaussian_double_sum(1, r, 0.0, r), DomainError);
}

TEST_CASE("em_gaussian_double_sum: residual vanishes as l^2") {
  for (double L : {0.5 * r, 10 * r}) {
    std::vector<double> ls, res;
    for (double lf : {3e-3, 1e-2, 3e-2, 1e-1}) {
      const double l = lf * r;
      const long n = std::lround(L / l);
      const double s = lattice::axis_sum(n, l, 0.0, r).value;
      ls.push_back(l);
      res.push_back(s - em_gaussian_double_sum(n, l, 0.0, r).total());
    }
    CHECK(slope(ls, res) == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("em_gaussian_double_sum: empirical constant C <= 5") {
  oracle::Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const double l = r * rng.log_uniform(1e-2, 1.4);
    const long n = rng.integer(2, 400);
    const double d = r * rng.uniform(0.0, 5.0);
    const double s = lattice::axis_sum(n, l, d, r).value;
    const auto e = em_gaussian_double_sum(n, l, d, r);
    CHECK(std::abs(s - e.total()) <= 5.0 * e.error_order);
  }
}

TEST_CASE("coefficient 1/3 leaves a constant residual (negative control)") {
  const double l = 1e-2 * r;
  const long n = 1000;
  const double s = lattice::axis_sum(n, l, 0.0, r).value;
  const auto e = em_gaussian_double_sum(n, l, 0.0, r);
  const double third = e.continuum_term + e.boundary_term * (1.0 / 3.0) / boundary_coefficient;
  CHECK(std::abs(s - e.total()) < 1e-5);
  CHECK(std::abs(s - third) == doctest::Approx(1.0 / 6.0).epsilon(1e-3));
}

TEST_CASE("em_gaussian_double_sum: poor for l > sqrt(2) r_c") {
  const double s = lattice::axis_sum(2, 5 * r, 0.0, r).value;
  CHECK(s == doctest::Approx(2 + 2 * std::exp(-25.0 / 4.0)));
  const auto e = em_gaussian_double_sum(2, 5 * r, 0.0, r);
  CHECK(std::abs(s - e.total()) / s > 0.1);
}

TEST_CASE("EM relative error degrades monotonically with l") {
  const double L = 5 * r;
  double prev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double l = r * 0.02 * std::pow(50.0, i / 20.0);
    const long n = std::max(2L, std::lround(L / l));
    const double s = lattice::axis_sum(n, l, 0.0, r).value;
    const double err = std::abs(s - em_gaussian_double_sum(n, l, 0.0, r).total()) / s;
    CHECK(err >= 0.9 * prev);
    prev = err;
  }
}

TEST_CASE("relative_error_predict") {
  CHECK(relative_error_predict(Regime::LargeBody, 1e-10, 1e-7) ==
        doctest::Approx(1.667e-7).epsilon(1e-3));
  CHECK(relative_error_predict(Regime::SmallBody, r, r) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(relative_error_predict(Regime::LargeBody, 0.0, r), DomainError);
  CHECK(default_order(2 * r, r) == 0);
  CHECK(default_order(0.5 * r, r) == 2);
}
