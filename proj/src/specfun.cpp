#include "csl/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "csl/errors.hpp"

namespace csl::specfun {

namespace {

__extension__ typedef __int128 wide_int;

constexpr wide_int gcd_wide(wide_int a, wide_int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const wide_int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct WideRational {
  wide_int num = 0;
  wide_int den = 1;

  constexpr void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const wide_int g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
};

constexpr WideRational add(WideRational a, WideRational b) {
  const wide_int g = gcd_wide(a.den, b.den);
  WideRational r{a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den};
  r.normalize();
  return r;
}

constexpr wide_int binomial(int n, int k) {
  wide_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr std::array<Rational, 25> make_bernoulli_table() {
  std::array<WideRational, 25> b{};
  b[0] = {1, 1};
  for (int n = 1; n < 25; ++n) {
    WideRational acc{0, 1};
    for (int j = 0; j < n; ++j) {
      WideRational term{binomial(n + 1, j) * b[j].num, b[j].den};
      term.normalize();
      acc = add(acc, term);
    }
    // B_n = -acc / (n + 1)
    WideRational bn{-acc.num, acc.den * (n + 1)};
    bn.normalize();
    b[n] = bn;
  }
  std::array<Rational, 25> out{};
  for (int i = 0; i < 25; ++i) {
    out[i] = {static_cast<std::int64_t>(b[i].num),
              static_cast<std::int64_t>(b[i].den)};
  }
  return out;
}

constexpr std::array<Rational, 25> kBernoulli = make_bernoulli_table();

static_assert(kBernoulli[1].num == -1 && kBernoulli[1].den == 2);
static_assert(kBernoulli[2].num == 1 && kBernoulli[2].den == 6);
static_assert(kBernoulli[3].num == 0);
static_assert(kBernoulli[12].num == -691 && kBernoulli[12].den == 2730);

// Power series e^{-x} sum_k (x/2)^{2k+n} / (k! (k+n)!); all terms positive.
double bessel_series_scaled(int n, double x) {
  const double half = 0.5 * x;
  const double q = half * half;
  double term = (n == 0) ? 1.0 : half;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum * std::exp(-x);
}

// Hankel asymptotic series 1/sqrt(2 pi x) sum_k (-1)^k a_k(n) / x^k.
double bessel_asymptotic_scaled(int n, double x) {
  const double mu = 4.0 * n * n;
  double term = 1.0;
  double sum = 1.0;
  double previous = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) > previous) break;  // series started diverging
    sum += term;
    previous = std::abs(term);
    if (previous < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

const std::array<Rational, 25>& bernoulli_table() { return kBernoulli; }

double erf(double x) { return std::erf(x); }

double bessel_i_scaled(int n, double x) {
  if (n != 0 && n != 1) {
    throw DomainError("bessel_i_scaled: order must be 0 or 1, got " +
                      std::to_string(n));
  }
  if (!(x >= 0.0)) {
    throw DomainError("bessel_i_scaled: argument must be >= 0");
  }
  if (std::isinf(x)) return 0.0;
  if (x <= 25.0) return bessel_series_scaled(n, x);
  return bessel_asymptotic_scaled(n, x);
}

double hermite(int n, double u) {
  if (n < 0 || n > max_gaussian_derivative_order) {
    throw UnsupportedOrder("hermite: order " + std::to_string(n) +
                           " outside [0, 12]");
  }
  double h_prev = 1.0;
  if (n == 0) return h_prev;
  double h = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * u * h - 2.0 * k * h_prev;
    h_prev = h;
    h = next;
  }
  return h;
}

double gaussian_derivative(int n, double w, double s) {
  if (n < 0) throw DomainError("gaussian_derivative: negative order");
  if (n > max_gaussian_derivative_order) {
    throw UnsupportedOrder("gaussian_derivative: order " + std::to_string(n) +
                           " exceeds cap of 12");
  }
  if (!(s > 0.0)) throw DomainError("gaussian_derivative: width must be > 0");
  const double u = w / s;
  const double gauss = std::exp(-u * u);
  if (gauss == 0.0) return 0.0;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * hermite(n, u) * gauss / std::pow(s, n);
}

double bernoulli(int k) {
  if (k < 2 || k > 24 || k % 2 != 0) {
    throw DomainError("bernoulli: k must be even in [2, 24], got " +
                      std::to_string(k));
  }
  const Rational& r = kBernoulli[k];
  return static_cast<double>(r.num) / static_cast<double>(r.den);
}

double factorial(int n) {
  if (n < 0 || n > 30) throw DomainError("factorial: n outside [0, 30]");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace csl::specfun
