#pragma once

#include <cstdint>

#include "csl/domain.hpp"

/// Slow reference implementations used to validate the fast paths. They
/// depend on the domain types only and share no code with the rate modules.
namespace csl::oracles {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

/// (1/L^2) int_0^L int_0^L exp(-(u - v - delta)^2 / 4 r_c^2) du dv by dyadic
/// subdivision of the square with a tensor Gauss-Legendre rule. tol >= 1e-12.
/// Throws ConvergenceError when the cell budget runs out.
QuadResult quad_g_shifted(double length, double delta, double r_c, double tol);

/// Monte Carlo estimate of lambda int int rho(u) rho(v)
/// [e^{-|u-v|^2/4r_c^2} - e^{-|u-v-delta|^2/4r_c^2}] over the body.
/// Points come from a counter-based hash of (seed, sample index); samples
/// are split into fixed chunks reduced in order, so the result does not
/// depend on `threads` (0 = hardware concurrency). samples >= 1e5.
QuadResult mc_gamma_continuous(const Geometry& geom, const Displacement& disp,
                               const PhysParams& params, long samples,
                               std::uint64_t seed, unsigned threads = 0);

struct Offset {
  double x = 0.0, y = 0.0, z = 0.0;
};

/// Literal double loop over site pairs. At most 1e4 sites (SizeError).
/// `origin` shifts every site, which must not change the result.
double bruteforce_gamma_discrete(const Lattice& lat, const Displacement& disp,
                                 const PhysParams& params, Offset origin = {});

}  // namespace csl::oracles
