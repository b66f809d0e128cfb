#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nsp2d/spectral_field.hpp"

namespace nsp2d {

/// Which momentum equation the solver integrates.
enum class SystemKind {
  /// Irrotational viscous approximation: L u = 2 Lap u, no 1/rho weight.
  irrotational,
  /// The scaled NSP system: (eps/rho)(Lap u + grad div u).
  full,
};

struct SimulationParams {
  double epsilon = 0.1;
  double kappa0 = 1.0 / 200.0;
  double dt = 0.05;
  double t_end = 1.0;
  double theta = 0.1;
  double delta = 1.0 / 1000.0;
  int sigma = 0;
  int n_reg = 11;
  int n_prime = 7;
  // Fixed by the model: gamma = 2, mu = 1, lambda = 0.
  static constexpr double gamma = 2.0;
  static constexpr double mu = 1.0;
  static constexpr double lambda_lame = 0.0;

  double alpha_decay() const { return 2.0 - 5.0 * delta; }
  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// Density perturbation rho - 1, velocity and the derived Poisson potential.
struct PrimitiveState {
  double time = 0.0;
  SpectralField rho_pert;
  VectorField u;
  SpectralField phi;
  SimulationParams params;

  PrimitiveState(double time, SpectralField rho_pert, VectorField u,
                 SimulationParams params);

  static PrimitiveState equilibrium(const Grid2D& grid,
                                    const SimulationParams& params);

  const Grid2D& grid() const { return rho_pert.grid(); }
  /// Recomputes phi from rho_pert.
  void refresh_potential();
  VectorField electric_field() const;
};

/// U = (a, c) with a = (<nabla>/|nabla|) rho, c = (div/|nabla|) u.
struct SymmetrizedState {
  double time = 0.0;
  SpectralField a;
  SpectralField c;
};

/// Drops the zero modes of a and c (the mean of rho is not representable).
SymmetrizedState to_symmetrized(const PrimitiveState& state);
/// Inverse map for irrotational data: rho = (|nabla|/<nabla>) a,
/// u = -(nabla/|nabla|) c.
PrimitiveState to_primitive(const SymmetrizedState& sym,
                            const SimulationParams& params);

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver failure (vacuum guard, repeated CFL rejection). Carries the last
/// good state for post-mortem output.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(const std::string& what, std::optional<PrimitiveState> snapshot)
      : std::runtime_error(what), snapshot_(std::move(snapshot)) {}
  const std::optional<PrimitiveState>& snapshot() const { return snapshot_; }

 private:
  std::optional<PrimitiveState> snapshot_;
};

}  // namespace nsp2d
