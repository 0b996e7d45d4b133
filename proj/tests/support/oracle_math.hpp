#pragma once

// Reference implementations used only by tests. Everything here is written
// from scratch in long double and shares no code with the library.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Maclaurin series of erf; fine for |x| <= 4 in long double.
inline long double erf_series(long double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double term = x, sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
  }
  return 2.0L / std::sqrt(pi) * sum;
}

// erfc by its continued fraction, x >= 2.
inline long double erfc_cf(long double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double f = 0.0L;  // evaluated bottom-up
  for (int k = 200; k >= 1; --k) f = (k / 2.0L) / (x + f);
  return std::exp(-x * x) / std::sqrt(pi) / (x + f);
}

inline long double erf_ref(long double x) {
  if (x < 0) return -erf_ref(-x);
  return x <= 3.0L ? erf_series(x) : 1.0L - erfc_cf(x);
}

// e^{-x} I_n(x) from the power series, n in {0, 1}, x up to ~60.
inline long double bessel_i_scaled_series(int n, long double x) {
  const long double q = x * x / 4.0L;
  long double term = n == 0 ? 1.0L : x / 2.0L;
  long double sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum * std::exp(-x);
}

// Bernoulli numbers B_0..B_k from sum_{j<=m} C(m+1, j) B_j = 0, exact rationals.
__extension__ typedef __int128 i128;

struct Frac {
  i128 num = 0, den = 1;
  static Frac make(i128 n, i128 d) {
    if (d < 0) n = -n, d = -d;
    i128 a = n < 0 ? -n : n, b = d;
    while (b) { const i128 t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    return {n / a, d / a};
  }
  Frac operator+(const Frac& o) const { return make(num * o.den + o.num * den, den * o.den); }
  Frac operator*(i128 k) const { return make(num * k, den); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline std::vector<Frac> bernoulli_recurrence(int k) {
  std::vector<Frac> b(k + 1);
  b[0] = {1, 1};
  for (int m = 1; m <= k; ++m) {
    Frac acc{0, 1};
    i128 binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc = acc + b[j] * binom;
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = Frac::make(-acc.num, acc.den * (m + 1));
  }
  return b;
}

// g(x) directly from its closed form in long double (x / r_c >= 1e-2).
inline long double g_closed(long double x, long double r_c) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double s = x / (2 * r_c);
  return (std::exp(-s * s) - 1.0L + std::sqrt(pi) * s * erf_ref(s)) / (s * s);
}

// One-axis discrete double sum by explicit enumeration.
inline long double axis_enumerate(long n, long double l, long double delta, long double r_c) {
  long double sum = 0.0L;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const long double x = (i - j) * l + delta;
      sum += std::exp(-x * x / (4 * r_c * r_c));
    }
  }
  return sum;
}

// Simple SplitMix64 for test-side random draws.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }
  long integer(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace oracle
