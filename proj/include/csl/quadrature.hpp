#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <vector>

namespace csl::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Gauss-Legendre rule on [-1, 1], nodes ascending. Computed once by Newton
/// iteration on P_n and cached; n in [1, 64].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Fixed composite rule: [a, b] split into `panels` equal panels, `order`
/// Gauss-Legendre points each.
template <class F>
double composite_gauss_legendre(F&& f, double a, double b, int panels,
                                int order = 16) {
  const GaussLegendre& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    total += half * panel;
  }
  return total;
}

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature: the segment with the
/// largest error estimate is bisected until the summed error is below
/// max(abs_tol, rel_tol * |value|) or `max_segments` is reached. Bisection
/// order depends only on the integrand, so results are deterministic.
template <class F>
Result integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                 int max_segments = 4000) {
  std::priority_queue<detail::Segment> heap;
  Result result;
  auto first = detail::gauss_kronrod_15(f, a, b);
  result.evaluations = 15;
  heap.push(first);
  double value = first.value;
  double error = first.error;
  int segments = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value)) &&
         segments < max_segments) {
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  // Re-sum from the leaves to shed the drift of the running updates.
  double total = 0.0;
  double total_error = 0.0;
  std::vector<detail::Segment> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  for (const auto& s : leaves) {
    total += s.value;
    total_error += s.error;
  }
  result.value = total;
  result.abs_error = total_error;
  result.converged =
      total_error <= std::max(abs_tol, rel_tol * std::abs(total));
  return result;
}

}  // namespace csl::quad
