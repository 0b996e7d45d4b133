#include "csl/euler_maclaurin.hpp"

#include <cmath>
#include <string>

#include "csl/continuum_rates.hpp"
#include "csl/errors.hpp"
#include "csl/quadrature.hpp"
#include "csl/specfun.hpp"

namespace csl::em {

EmSum em_sum_generic(const DerivativeFn& f, int max_derivative, long n, int p,
                     double rel_tol) {
  if (p < 0 || p > max_order) {
    throw UnsupportedOrder("em_sum_generic: p must lie in [0, 6], got " +
                           std::to_string(p));
  }
  if (max_derivative < 2 * p + 2) {
    throw UnsupportedOrder("em_sum_generic: order p = " + std::to_string(p) +
                           " needs derivatives up to " + std::to_string(2 * p + 2));
  }
  if (n < 1) throw DomainError("em_sum_generic: n must be >= 1");
  const double upper = static_cast<double>(n);

  auto value = [&f](double x) { return f(0, x); };
  const auto integral = quad::integrate(value, 0.0, upper, rel_tol, 1e-300, 20000);
  double estimate = integral.value + 0.5 * (f(0, upper) - f(0, 0.0));
  for (int k = 1; k <= p; ++k) {
    const double coeff = specfun::bernoulli(2 * k) / specfun::factorial(2 * k);
    estimate += coeff * (f(2 * k - 1, upper) - f(2 * k - 1, 0.0));
  }

  const int top = 2 * p + 2;
  auto magnitude = [&f, top](double x) { return std::abs(f(top, x)); };
  const auto abs_integral =
      quad::integrate(magnitude, 0.0, upper, 1e-6, 1e-300, 20000);
  const double bound = 2.0 * std::abs(specfun::bernoulli(top)) /
                       specfun::factorial(top) * abs_integral.value;
  return {estimate, bound, p};
}

EmEstimate em_gaussian_double_sum(long n, double l, double delta, double r_c) {
  if (n < 2) throw DomainError("em_gaussian_double_sum: n must be >= 2");
  const double length = static_cast<double>(n) * l;
  const double w = 4.0 * r_c * r_c;
  auto gauss = [w](double x) { return std::exp(-x * x / w); };
  EmEstimate out;
  out.continuum_term = static_cast<double>(n) * static_cast<double>(n) *
                       continuum::g_shifted(length, delta, r_c);
  out.boundary_term = boundary_coefficient *
                      (gauss(delta) - 0.5 * gauss(length - delta) -
                       0.5 * gauss(length + delta));
  out.order = default_order(l, r_c);
  out.error_order = l * l / (2.0 * r_c * r_c);
  return out;
}

int default_order(double l, double r_c) {
  return (l >= std::sqrt(2.0) * r_c) ? 0 : 2;
}

double relative_error_predict(Regime regime, double l, double r_c) {
  if (!(l > 0.0)) throw DomainError("relative_error_predict: l must be > 0");
  const double ratio = l * l / (r_c * r_c);
  return regime == Regime::LargeBody ? ratio / 6.0 : ratio / 3.0;
}

}  // namespace csl::em
