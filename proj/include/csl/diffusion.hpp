#pragma once

#include <array>
#include <optional>
#include <string>

#include "csl/domain.hpp"

/// Diffusion coefficients eta^{ab} of the small-displacement master
/// equation. Masses are counted in nucleons, so the nucleon mass cancels
/// and eta carries units of s^-1 m^-2.
namespace csl::diffusion {

struct DiffusionTensor {
  std::array<std::array<double, 3>, 3> eta{};
  std::string method;

  double trace() const { return eta[0][0] + eta[1][1] + eta[2][2]; }
  double zz() const { return eta[2][2]; }
  /// Smallest eigenvalue of the symmetric part (Jacobi rotations).
  double min_eigenvalue() const;
};

/// Pair sum over lattice sites grouped by separation vector; separations
/// beyond 12 r_c are dropped. Throws SizeError above 1e6 sites or when the
/// retained separation vectors exceed 2e8.
DiffusionTensor eta_discrete(const Lattice& lat, const PhysParams& params);

/// lambda N^2 g(L_x) g(L_y) (1 - e^{-L_z^2/4r_c^2}) / L_z^2.
double eta_zz_cuboid_uniform(const Geometry& geom, const PhysParams& params);

struct LayerOrders {
  double eta0 = 0.0;
  double eta1 = 0.0;
};

struct LayerEta {
  double total = 0.0;
  double boundary_part = 0.0;   // the two outer faces
  double interface_part = 0.0;  // everything involving an inner interface
  std::optional<LayerOrders> orders;
};

/// Literal double sum over layer pairs with the four-Gaussian boundary
/// combination, windowed to pairs closer than 13 r_c. The split into
/// boundary and interface parts uses the density jumps at each boundary.
/// Orders are reported for an even number of equal-thickness layers with two
/// alternating densities.
LayerEta eta_zz_layered(const LayerStack& stack, const PhysParams& params);

struct AlternatingStack {
  long n_pairs = 1;
  double l_odd = 0.0;
  double l_even = 0.0;
  double rho_odd = 0.0;   // nucleons/m^3
  double rho_even = 0.0;  // nucleons/m^3
  double d = 0.0;

  LayerStack to_stack() const;
};

/// 2N alternating layers evaluated through the density jumps at the 2N + 1
/// boundaries. Orders need l_odd == l_even.
LayerEta eta_zz_alternating(const AlternatingStack& stack, const PhysParams& params);

/// 1 + (4N - 1) (rho_o - rho_e)^2 / (rho_o + rho_e)^2. N may be fractional
/// (an odd layer count 2N).
double layering_ratio(double n_pairs, double rho_odd, double rho_even);

/// Fourier-space form: (lambda r_c^3 / 2 pi^{3/2}) int d^3k e^{-r_c^2 k^2}
/// |mu(k)|^2 k_a k_b over [-10/r_c, 10/r_c]^3. For the cuboid the integrand
/// factorizes into one-dimensional integrals, each done adaptively to
/// params.rel_tol. Throws ConvergenceError if a factor does not converge.
DiffusionTensor eta_momentum_space(const Geometry& geom, const PhysParams& params);

}  // namespace csl::diffusion
