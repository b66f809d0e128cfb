#pragma once

#include <functional>

#include "nsp2d/config.hpp"
#include "nsp2d/state.hpp"

namespace nsp2d {

/// Unit-amplitude potential data: rho = -w^2 Lap of a Gaussian (zero net
/// charge) and u = grad of a Gaussian potential, both restricted to the chi^L
/// band and with zero mean density.
PrimitiveState irrotational_shape(const Grid2D& grid,
                                  const SimulationParams& params,
                                  std::uint64_t seed);

/// Unit-amplitude divergence-free Gaussian vortex u = grad-perp psi.
PrimitiveState vortex_shape(const Grid2D& grid, const SimulationParams& params,
                            std::uint64_t seed);

/// Finds A with measure(A) within rel_tol of target by bracketing and
/// bisection. measure must be increasing. Throws std::runtime_error with the
/// measured values when no bracket is found.
double calibrate_amplitude(const std::function<double(double)>& measure,
                           double target, double rel_tol = 1e-6);

struct InitialData {
  PrimitiveState irrotational;  // potential part of the data
  PrimitiveState rotational;    // divergence-free part (zero density)
  double irrotational_norm = 0.0;
  double rotational_norm = 0.0;

  /// Sum of both parts.
  PrimitiveState combined() const;
};

/// Builds and calibrates the data requested by the config. Parts that the
/// profile does not ask for are the zero state.
InitialData generate_initial_parts(const ScenarioConfig& config);
PrimitiveState generate_initial(const ScenarioConfig& config);

/// H^3 norm of the velocity.
double velocity_h3_norm(const PrimitiveState& state);

}  // namespace nsp2d
