#include "nsp2d/state.hpp"

#include <cmath>

#include "nsp2d/multipliers.hpp"

namespace nsp2d {

void SimulationParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ValidationError("params.epsilon must lie in (0,1]");
  if (!(kappa0 > 0.0)) throw ValidationError("params.kappa0 must be positive");
  if (!(dt > 0.0)) throw ValidationError("params.dt must be positive");
  if (!(t_end >= 0.0)) throw ValidationError("params.t_end must be >= 0");
  if (!(theta >= 0.0)) throw ValidationError("params.theta must be >= 0");
  if (!(delta > 0.0 && delta < 0.2))
    throw ValidationError("params.delta must lie in (0, 0.2)");
  if (sigma < 0) throw ValidationError("params.sigma must be >= 0");
  if (n_prime <= 0 || n_reg <= 0)
    throw ValidationError("regularity indices must be positive");
}

PrimitiveState::PrimitiveState(double t, SpectralField rho, VectorField vel,
                               SimulationParams p)
    : time(t),
      rho_pert(std::move(rho)),
      u(std::move(vel)),
      phi(poisson_solve(rho_pert)),
      params(p) {}

PrimitiveState PrimitiveState::equilibrium(const Grid2D& grid,
                                           const SimulationParams& params) {
  return PrimitiveState(0.0, SpectralField(grid), zero_vector(grid), params);
}

void PrimitiveState::refresh_potential() { phi = poisson_solve(rho_pert); }

VectorField PrimitiveState::electric_field() const { return gradient(phi); }

SymmetrizedState to_symmetrized(const PrimitiveState& state) {
  SymmetrizedState out{state.time,
                       map_modes(state.rho_pert,
                                 [](double k1, double k2) -> Complex {
                                   const double r = std::hypot(k1, k2);
                                   if (r == 0.0) return 0.0;
                                   return symbols::bracket(k1, k2) / r;
                                 }),
                       riesz_divergence(state.u)};
  return out;
}

PrimitiveState to_primitive(const SymmetrizedState& sym,
                            const SimulationParams& params) {
  auto rho = map_modes(sym.a, [](double k1, double k2) -> Complex {
    return symbols::abs_xi(k1, k2) / symbols::bracket(k1, k2);
  });
  auto r = riesz(sym.c);
  VectorField u{-1.0 * r[0], -1.0 * r[1]};
  return PrimitiveState(sym.time, std::move(rho), std::move(u), params);
}

}  // namespace nsp2d
