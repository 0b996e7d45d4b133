#pragma once

#include <array>
#include <cstdint>

/// Special functions used by the closed-form rate expressions.
///
/// Accuracy contracts:
///   erf                 absolute error <= 1e-15
///   bessel_i_scaled     relative error <= 1e-12 for any x >= 0, never overflows
///   gaussian_derivative exact Hermite recurrence, orders 0..12
///   bernoulli           exact rationals (computed at compile time) as binary64
namespace csl::specfun {

double erf(double x);

/// e^{-x} I_n(x) for n in {0, 1} and x >= 0. Throws DomainError otherwise.
double bessel_i_scaled(int n, double x);

inline constexpr int max_gaussian_derivative_order = 12;

/// d^n/dw^n exp(-w^2/s^2). Throws UnsupportedOrder for n > 12, DomainError
/// for s <= 0 or n < 0.
double gaussian_derivative(int n, double w, double s);

/// Physicists' Hermite polynomial H_n(u), n <= 12.
double hermite(int n, double u);

/// B_k for even k in [2, 24]. Throws DomainError otherwise.
double bernoulli(int k);

struct Rational {
  std::int64_t num;
  std::int64_t den;
};

/// Exact B_0..B_24, derived from sum_{j=0}^{n} C(n+1, j) B_j = 0.
const std::array<Rational, 25>& bernoulli_table();

/// n! as a double, n <= 30.
double factorial(int n);

}  // namespace csl::specfun
