#include "csl/oracles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "csl/errors.hpp"

namespace csl::oracles {

namespace {

// ---- 2D quadrature -------------------------------------------------------

constexpr int kRulePoints = 8;

struct Rule {
  std::array<double, kRulePoints> x{};
  std::array<double, kRulePoints> w{};
};

// Gauss-Legendre nodes on [0, 1].
Rule make_rule() {
  Rule rule;
  const int n = kRulePoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double deriv = 1.0;
    for (int it = 0; it < 60; ++it) {
      double p_prev = 1.0, p = x;
      for (int k = 2; k <= n; ++k) {
        const double next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
        p_prev = p;
        p = next;
      }
      deriv = n * (p_prev - x * p) / (1.0 - x * x);
      const double dx = p / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-17) break;
    }
    rule.x[i] = 0.5 * (1.0 - x);
    rule.w[i] = 1.0 / ((1.0 - x * x) * deriv * deriv);  // half of 2/(..)
  }
  return rule;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

struct Cell {
  double x0, y0, h;
  double value, error;
  bool operator<(const Cell& o) const { return error < o.error; }
};

template <class F>
double tensor_rule(const F& f, double x0, double y0, double h) {
  const Rule& r = rule();
  double sum = 0.0;
  for (int i = 0; i < kRulePoints; ++i) {
    double row = 0.0;
    for (int j = 0; j < kRulePoints; ++j) {
      row += r.w[j] * f(x0 + h * r.x[i], y0 + h * r.x[j]);
    }
    sum += r.w[i] * row;
  }
  return sum * h * h;
}

template <class F>
Cell make_cell(const F& f, double x0, double y0, double h, long& evals) {
  const double coarse = tensor_rule(f, x0, y0, h);
  const double half = 0.5 * h;
  const double fine = tensor_rule(f, x0, y0, half) + tensor_rule(f, x0 + half, y0, half) +
                      tensor_rule(f, x0, y0 + half, half) +
                      tensor_rule(f, x0 + half, y0 + half, half);
  evals += 5 * kRulePoints * kRulePoints;
  return {x0, y0, h, fine, std::abs(fine - coarse)};
}

// ---- counter-based random numbers ----------------------------------------

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Stream {
  std::uint64_t key;
  std::uint64_t counter = 0;
  double next() {
    const std::uint64_t bits = mix(key ^ mix(counter++));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }
};

struct Point {
  double x, y, z;
};

Point sample_body(const Geometry& geom, Stream& s) {
  if (const auto box = geom.box()) {
    return {box->lx * s.next(), box->ly * s.next(), box->lz * s.next()};
  }
  if (const auto* sp = std::get_if<Sphere>(&geom.shape())) {
    for (;;) {
      const double x = 2.0 * s.next() - 1.0;
      const double y = 2.0 * s.next() - 1.0;
      const double z = 2.0 * s.next() - 1.0;
      if (x * x + y * y + z * z <= 1.0) return {sp->r * x, sp->r * y, sp->r * z};
    }
  }
  const auto& c = std::get<Cylinder>(geom.shape());
  for (;;) {
    const double x = 2.0 * s.next() - 1.0;
    const double y = 2.0 * s.next() - 1.0;
    if (x * x + y * y <= 1.0) return {c.r * x, c.r * y, c.l * s.next()};
  }
}

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

QuadResult quad_g_shifted(double length, double delta, double r_c, double tol) {
  if (!(tol >= 1e-12)) throw DomainError("quad_g_shifted: tol must be >= 1e-12");
  if (!(length > 0.0) || !(r_c > 0.0)) {
    throw DomainError("quad_g_shifted: length and r_c must be > 0");
  }
  // Unit square coordinates; the kernel in units of 2 r_c.
  const double scale = length / (2.0 * r_c);
  const double shift = delta / (2.0 * r_c);
  auto f = [scale, shift](double u, double v) {
    const double s = scale * (u - v) - shift;
    return std::exp(-s * s);
  };
  QuadResult out;
  std::priority_queue<Cell> heap;
  heap.push(make_cell(f, 0.0, 0.0, 1.0, out.evaluations));
  constexpr long kMaxCells = 400000;
  double value = heap.top().value;
  double error = heap.top().error;
  long cells = 1;
  while (error > tol * std::abs(value) && error > 1e-300) {
    if (cells >= kMaxCells) {
      throw ConvergenceError("quad_g_shifted: cell budget exhausted");
    }
    const Cell worst = heap.top();
    heap.pop();
    value -= worst.value;
    error -= worst.error;
    const double half = 0.5 * worst.h;
    for (int k = 0; k < 4; ++k) {
      const Cell child = make_cell(f, worst.x0 + (k % 2) * half,
                                   worst.y0 + (k / 2) * half, half, out.evaluations);
      value += child.value;
      error += child.error;
      heap.push(child);
    }
    cells += 3;
  }
  double total = 0.0, total_error = 0.0;
  std::vector<Cell> leaves;
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(), [](const Cell& a, const Cell& b) {
    return a.x0 != b.x0 ? a.x0 < b.x0 : a.y0 < b.y0;
  });
  for (const Cell& c : leaves) {
    total += c.value;
    total_error += c.error;
  }
  out.value = total;
  out.abs_error_estimate = total_error;
  return out;
}

QuadResult mc_gamma_continuous(const Geometry& geom, const Displacement& disp,
                               const PhysParams& params, long samples,
                               std::uint64_t seed, unsigned threads) {
  if (samples < 100000) throw DomainError("mc_gamma_continuous: samples must be >= 1e5");
  constexpr long kChunk = 1L << 16;
  const long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partial(chunks);
  const double w = 4.0 * params.r_c * params.r_c;

  auto run_chunk = [&](long c) {
    const long begin = c * kChunk;
    const long end = std::min(samples, begin + kChunk);
    ChunkSums sums;
    for (long i = begin; i < end; ++i) {
      Stream s{mix(seed) ^ mix(static_cast<std::uint64_t>(i) * 0x632be59bd9b4e019ULL)};
      const Point u = sample_body(geom, s);
      const Point v = sample_body(geom, s);
      const double dx = u.x - v.x, dy = u.y - v.y, dz = u.z - v.z;
      const double ex = dx - disp.dx, ey = dy - disp.dy, ez = dz - disp.dz;
      const double f = std::exp(-(dx * dx + dy * dy + dz * dz) / w) -
                       std::exp(-(ex * ex + ey * ey + ez * ez) / w);
      sums.sum += f;
      sums.sum_sq += f * f;
    }
    partial[c] = sums;
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, chunks));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long c = next++; c < chunks; c = next++) run_chunk(c);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  long double sum = 0.0L, sum_sq = 0.0L;
  for (const ChunkSums& p : partial) {
    sum += p.sum;
    sum_sq += p.sum_sq;
  }
  const long double n = static_cast<long double>(samples);
  const long double mean = sum / n;
  const long double var = std::max(0.0L, (sum_sq / n - mean * mean) * n / (n - 1.0L));
  const double n_tot = geom.density_n() * geom.volume();
  const double scale = params.lambda * n_tot * n_tot;
  QuadResult out;
  out.value = scale * static_cast<double>(mean);
  out.abs_error_estimate = scale * static_cast<double>(std::sqrt(var / n));
  out.evaluations = samples;
  return out;
}

double bruteforce_gamma_discrete(const Lattice& lat, const Displacement& disp,
                                 const PhysParams& params, Offset origin) {
  if (lat.n_sites() > 1e4L) {
    throw SizeError("bruteforce_gamma_discrete: more than 1e4 sites");
  }
  std::vector<Point> sites;
  for (long i = 0; i < lat.nx(); ++i) {
    for (long j = 0; j < lat.ny(); ++j) {
      for (long k = 0; k < lat.nz(); ++k) {
        sites.push_back({origin.x + i * lat.l(), origin.y + j * lat.l(),
                         origin.z + k * lat.l()});
      }
    }
  }
  const long double w = 4.0L * params.r_c * params.r_c;
  long double total = 0.0L;
  for (const Point& a : sites) {
    for (const Point& b : sites) {
      const long double dx = static_cast<long double>(a.x) - b.x;
      const long double dy = static_cast<long double>(a.y) - b.y;
      const long double dz = static_cast<long double>(a.z) - b.z;
      const long double ex = dx - disp.dx, ey = dy - disp.dy, ez = dz - disp.dz;
      total += std::exp(-(dx * dx + dy * dy + dz * dz) / w) -
               std::exp(-(ex * ex + ey * ey + ez * ez) / w);
    }
  }
  return static_cast<double>(params.lambda * lat.n_a() * lat.n_a() * total);
}

}  // namespace csl::oracles
