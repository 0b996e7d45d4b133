#include "csl/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "csl/compensated_sum.hpp"
#include "csl/continuum_rates.hpp"
#include "csl/errors.hpp"
#include "csl/quadrature.hpp"

namespace csl::diffusion {

namespace {

using std::numbers::pi;

// Pairs of boundaries farther apart than this (in r_c) are dropped:
// e^{-13^2/4} < 5e-19.
constexpr double kLayerCut = 13.0;
constexpr double kPairCut = 12.0;
constexpr double kMomentumReach = 10.0;

double gauss(double x, double r_c) {
  const double s = x / (2.0 * r_c);
  return std::exp(-s * s);
}

// lambda d^4 g(d)^2 / 2: the transverse factor of a square cross-section.
double layer_prefactor(double d, const PhysParams& params) {
  const double g = continuum::g_factor(d, params.r_c);
  return 0.5 * params.lambda * d * d * d * d * g * g;
}

struct JumpParts {
  double boundary = 0.0;
  double interface = 0.0;
};

// Jump weights c_a = rho_a - rho_{a+1} at boundaries z_0..z_n (outside the
// body the density is zero). Sum_{a,b} c_a c_b E(z_a - z_b) split into the
// outer-face pair and the rest.
JumpParts jump_sums(const std::vector<double>& z, const std::vector<double>& c,
                    double r_c) {
  const std::size_t n = z.size() - 1;
  const double cut = kLayerCut * r_c;
  JumpParts parts;
  parts.boundary = c[0] * c[0] + c[n] * c[n] + 2.0 * c[0] * c[n] * gauss(z[n] - z[0], r_c);
  CompensatedSum inner;
  for (std::size_t a = 1; a < n; ++a) {
    if (c[a] == 0.0) continue;
    inner += c[a] * c[a];
    for (std::size_t b = a + 1; b < n && z[b] - z[a] <= cut; ++b) {
      inner += 2.0 * c[a] * c[b] * gauss(z[b] - z[a], r_c);
    }
    inner += 2.0 * c[a] * (c[0] * gauss(z[a] - z[0], r_c) + c[n] * gauss(z[n] - z[a], r_c));
  }
  parts.interface = inner.value();
  return parts;
}

std::vector<double> jump_weights(const LayerStack& stack) {
  const auto& layers = stack.layers();
  std::vector<double> c(layers.size() + 1);
  c[0] = -layers.front().density_n;
  for (std::size_t a = 1; a < layers.size(); ++a) {
    c[a] = layers[a - 1].density_n - layers[a].density_n;
  }
  c[layers.size()] = layers.back().density_n;
  return c;
}

// Orders exist for an even number of equal-thickness, two-density layers.
std::optional<LayerOrders> layer_orders(const LayerStack& stack, double prefactor,
                                        double r_c) {
  const auto& layers = stack.layers();
  if (layers.size() % 2 != 0 || !stack.is_two_density_alternating()) return std::nullopt;
  const double l = layers.front().thickness;
  for (const Layer& layer : layers) {
    if (layer.thickness != l) return std::nullopt;
  }
  const double rho_o = layers[0].density_n;
  const double rho_e = layers[1].density_n;
  const double jump = rho_o - rho_e;
  const double interfaces = static_cast<double>(layers.size() - 1);
  LayerOrders orders;
  orders.eta0 = prefactor * (interfaces * jump * jump + rho_o * rho_o + rho_e * rho_e);
  orders.eta1 = -2.0 * prefactor * interfaces * jump * jump * gauss(l, r_c);
  return orders;
}

// 3x3 symmetric eigenvalues by cyclic Jacobi rotations.
std::array<double, 3> symmetric_eigenvalues(std::array<std::array<double, 3>, 3> a) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = cs * akp - sn * akq;
          a[k][q] = sn * akp + cs * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = cs * apk - sn * aqk;
          a[q][k] = sn * apk + cs * aqk;
        }
      }
    }
  }
  return {a[0][0], a[1][1], a[2][2]};
}

}  // namespace

double DiffusionTensor::min_eigenvalue() const {
  auto sym = eta;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      sym[i][j] = sym[j][i] = 0.5 * (eta[i][j] + eta[j][i]);
    }
  }
  const auto ev = symmetric_eigenvalues(sym);
  return *std::min_element(ev.begin(), ev.end());
}

DiffusionTensor eta_discrete(const Lattice& lat, const PhysParams& params) {
  params.validate();
  if (lat.n_sites() > 1e6L) {
    throw SizeError("eta_discrete: more than 1e6 lattice sites");
  }
  const double r = params.r_c;
  const double l = lat.l();
  const double cut = kPairCut * r;
  const long reach = static_cast<long>(std::floor(cut / l));
  const std::array<long, 3> n = {lat.nx(), lat.ny(), lat.nz()};
  std::array<long, 3> m_max{};
  double vectors = 1.0;
  for (int k = 0; k < 3; ++k) {
    m_max[k] = std::min(n[k] - 1, reach);
    vectors *= 2.0 * m_max[k] + 1.0;
  }
  if (vectors > 2e8) {
    throw SizeError("eta_discrete: too many separation vectors within 12 r_c");
  }
  std::array<std::array<CompensatedSum, 3>, 3> acc;
  const double cut2 = cut * cut;
  const double r2 = r * r;
  for (long mx = -m_max[0]; mx <= m_max[0]; ++mx) {
    for (long my = -m_max[1]; my <= m_max[1]; ++my) {
      for (long mz = -m_max[2]; mz <= m_max[2]; ++mz) {
        const std::array<double, 3> sep = {mx * l, my * l, mz * l};
        const double d2 = sep[0] * sep[0] + sep[1] * sep[1] + sep[2] * sep[2];
        if (d2 > cut2) continue;
        const double mult = static_cast<double>(n[0] - std::labs(mx)) *
                            static_cast<double>(n[1] - std::labs(my)) *
                            static_cast<double>(n[2] - std::labs(mz));
        const double w = mult * std::exp(-d2 / (4.0 * r2));
        for (int a = 0; a < 3; ++a) {
          acc[a][a] += w * (2.0 * r2 - sep[a] * sep[a]);
          for (int b = a + 1; b < 3; ++b) acc[a][b] += w * sep[a] * sep[b];
        }
      }
    }
  }
  const double pref = params.lambda * lat.n_a() * lat.n_a() / (8.0 * r2 * r2);
  DiffusionTensor out;
  out.method = "discrete";
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      out.eta[a][b] = out.eta[b][a] = pref * acc[a][b].value();
    }
  }
  return out;
}

double eta_zz_cuboid_uniform(const Geometry& geom, const PhysParams& params) {
  params.validate();
  const auto box = geom.box();
  if (!box) {
    throw InvalidGeometry("eta_zz_cuboid_uniform needs a cuboid, got " +
                          std::string(geom.kind()));
  }
  const double n = nucleon_count(geom);
  const double r = params.r_c;
  return params.lambda * n * n * continuum::g_factor(box->lx, r) *
         continuum::g_factor(box->ly, r) * continuum::axial_small_delta_factor(box->lz, r);
}

LayerEta eta_zz_layered(const LayerStack& stack, const PhysParams& params) {
  params.validate();
  const double r = params.r_c;
  const double cut = kLayerCut * r;
  const auto& z = stack.boundaries();
  const auto& layers = stack.layers();
  const std::size_t n = layers.size();
  const double pref = layer_prefactor(stack.d(), params);

  // Layer i spans [z[i], z[i+1]].
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = layers[i].density_n;
    if (ri == 0.0) continue;
    const double t = layers[i].thickness / (2.0 * r);
    sum += ri * ri * (-2.0 * std::expm1(-t * t));
    for (std::size_t j = i + 1; j < n && z[j] - z[i + 1] <= cut; ++j) {
      const double rj = layers[j].density_n;
      if (rj == 0.0) continue;
      const double tij = gauss(z[j + 1] - z[i + 1], r) - gauss(z[j] - z[i + 1], r) -
                         gauss(z[j + 1] - z[i], r) + gauss(z[j] - z[i], r);
      sum += 2.0 * ri * rj * tij;
    }
  }
  const JumpParts parts = jump_sums(z, jump_weights(stack), r);
  LayerEta out;
  out.total = pref * sum.value();
  out.boundary_part = pref * parts.boundary;
  out.interface_part = pref * parts.interface;
  out.orders = layer_orders(stack, pref, r);
  return out;
}

LayerStack AlternatingStack::to_stack() const {
  if (n_pairs < 1) throw InvalidGeometry("alternating stack needs n_pairs >= 1");
  std::vector<Layer> layers;
  layers.reserve(2 * static_cast<std::size_t>(n_pairs));
  for (long k = 0; k < n_pairs; ++k) {
    layers.push_back({l_odd, rho_odd});
    layers.push_back({l_even, rho_even});
  }
  return LayerStack(d, std::move(layers));
}

LayerEta eta_zz_alternating(const AlternatingStack& alt, const PhysParams& params) {
  params.validate();
  const LayerStack stack = alt.to_stack();
  const double pref = layer_prefactor(alt.d, params);
  const JumpParts parts = jump_sums(stack.boundaries(), jump_weights(stack), params.r_c);
  LayerEta out;
  out.boundary_part = pref * parts.boundary;
  out.interface_part = pref * parts.interface;
  out.total = out.boundary_part + out.interface_part;
  if (alt.l_odd == alt.l_even) out.orders = layer_orders(stack, pref, params.r_c);
  return out;
}

double layering_ratio(double n_pairs, double rho_odd, double rho_even) {
  const double sum = rho_odd + rho_even;
  if (!(sum > 0.0)) throw DomainError("layering_ratio: densities sum to zero");
  const double jump = rho_odd - rho_even;
  return 1.0 + (4.0 * n_pairs - 1.0) * jump * jump / (sum * sum);
}

DiffusionTensor eta_momentum_space(const Geometry& geom, const PhysParams& params) {
  params.validate();
  const auto box = geom.box();
  if (!box) {
    throw InvalidGeometry("eta_momentum_space needs a cuboid, got " +
                          std::string(geom.kind()));
  }
  const double r = params.r_c;
  const double k_max = kMomentumReach / r;
  const std::array<double, 3> lengths = {box->lx, box->ly, box->lz};

  // moments[axis][p] = int e^{-r^2 k^2} 4 sin^2(kL/2)/k^2 k^p dk, p = 0, 1, 2.
  std::array<std::array<double, 3>, 3> moments{};
  for (int axis = 0; axis < 3; ++axis) {
    const double len = lengths[axis];
    for (int p = 0; p < 3; ++p) {
      auto integrand = [r, len, p](double k) {
        const double h = 0.5 * k * len;
        const double sinc = (h == 0.0) ? 1.0 : std::sin(h) / h;
        const double base = std::exp(-r * r * k * k) * len * len * sinc * sinc;
        return p == 0 ? base : (p == 1 ? base * k : base * k * k);
      };
      // Odd moments vanish; their absolute tolerance is scaled by the even one.
      const double abs_tol =
          (p == 1) ? params.rel_tol * moments[axis][0] / r : 0.0;
      const auto res = quad::integrate(integrand, -k_max, k_max, params.rel_tol,
                                       abs_tol, 20000);
      if (!res.converged) {
        throw ConvergenceError("eta_momentum_space: axis " + std::to_string(axis) +
                               " moment " + std::to_string(p) + " did not converge");
      }
      moments[axis][p] = res.value;
    }
  }
  const double rho = geom.density_n();
  const double pref = params.lambda * r * r * r / (2.0 * std::pow(pi, 1.5)) * rho * rho;
  DiffusionTensor out;
  out.method = "momentum";
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      std::array<int, 3> power{};
      ++power[a];
      ++power[b];
      out.eta[a][b] = pref * moments[0][power[0]] * moments[1][power[1]] *
                      moments[2][power[2]];
    }
  }
  return out;
}

}  // namespace csl::diffusion
