#pragma once

#include <functional>

/// Euler-Maclaurin summation for Gaussian lattice sums.
namespace csl::em {

/// f^{(order)}(x). Must be reentrant.
using DerivativeFn = std::function<double(int order, double x)>;

struct EmSum {
  double estimate = 0.0;
  double remainder_bound = 0.0;
  int order = 0;  // p
};

inline constexpr int max_order = 6;

/// sum_{i=1}^{n} f(i) ~ int_0^n f + [f(n) - f(0)]/2
///                     + sum_{k=1}^{p} B_2k/(2k)! [f^{(2k-1)}(n) - f^{(2k-1)}(0)]
/// with |R_p| <= 2|B_{2p+2}|/(2p+2)! int_0^n |f^{(2p+2)}|.
/// `max_derivative` is the highest order the callback can supply; the bound
/// needs 2p + 2, otherwise UnsupportedOrder. p must lie in [0, 6].
EmSum em_sum_generic(const DerivativeFn& f, int max_derivative, long n, int p,
                     double rel_tol = 1e-12);

struct EmEstimate {
  double continuum_term = 0.0;  // n^2 g_delta(n l)
  double boundary_term = 0.0;
  int order = 0;
  double error_order = 0.0;     // l^2 / 2 r_c^2
  double total() const { return continuum_term + boundary_term; }
};

/// Coefficient of the boundary bracket: B_2 = 1/6.
inline constexpr double boundary_coefficient = 1.0 / 6.0;

/// Continuum-plus-boundary approximation of the axis sum
/// sum_{i,j=1}^{n} exp(-(l(i-j) - delta)^2 / 4 r_c^2), with
/// boundary = B_2 (e^{-delta^2/4r_c^2} - e^{-(L-delta)^2/4r_c^2}/2
///                 - e^{-(L+delta)^2/4r_c^2}/2), L = n l. Needs n >= 2.
EmEstimate em_gaussian_double_sum(long n, double l, double delta, double r_c);

/// p = 0 once the Gaussian is sampled coarser than sqrt(2) r_c, else 2.
int default_order(double l, double r_c);

enum class Regime { LargeBody, SmallBody };

/// Leading relative error of the continuum rate against the lattice rate:
/// l^2/6r_c^2 (L >> r_c) or l^2/3r_c^2 (L << r_c).
double relative_error_predict(Regime regime, double l, double r_c);

}  // namespace csl::em
