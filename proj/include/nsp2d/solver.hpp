#pragma once

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "nsp2d/linear_propagator.hpp"
#include "nsp2d/state.hpp"

namespace nsp2d {

/// Pointwise floor on 1 + rho_pert.
inline constexpr double kVacuumFloor = 0.25;
inline constexpr double kCflNumber = 0.5;
inline constexpr int kMaxDtHalvings = 10;

struct Tendency {
  SpectralField rho;
  VectorField u;
};

Tendency operator+(const Tendency& a, const Tendency& b);

/// Full tendency (linear plus nonlinear) of the primitive system.
Tendency rhs_primitive(const PrimitiveState& state,
                       SystemKind kind = SystemKind::irrotational);
/// Linear part: -div u and -grad rho + grad phi + eps L u.
Tendency rhs_linear(const PrimitiveState& state, SystemKind kind);
/// Quadratic and higher terms; dealiased. Checks the vacuum guard.
Tendency rhs_nonlinear(const PrimitiveState& state, SystemKind kind);

/// Nonlinear tendency (F1, F2) of the symmetrized system, u = -(nabla/|nabla|)c.
SymmetrizedState rhs_symmetrized(const SymmetrizedState& state);

/// Smallest 1 + rho_pert over the physical grid.
double min_density(const SpectralField& rho_pert);
double max_speed(const VectorField& u);

struct StepOptions {
  SystemKind kind = SystemKind::irrotational;
  bool nonlinear = true;
};

/// Strang stepper with its half-step propagators cached for one dt.
class StrangStepper {
 public:
  StrangStepper(const Grid2D& grid, double epsilon, double dt,
                StepOptions options = {});

  double dt() const { return dt_; }
  const StepOptions& options() const { return options_; }

  /// Advances by dt. When the CFL bound fails, dt is halved (at most
  /// kMaxDtHalvings times) and the interval is covered by substeps.
  PrimitiveState step(const PrimitiveState& state) const;

  /// One Strang step of exactly h, without any CFL handling.
  PrimitiveState raw_step(const PrimitiveState& state, double h) const;

 private:
  const LinearPropagator& propagator(double h) const;

  Grid2D grid_;
  double epsilon_;
  double dt_;
  StepOptions options_;
  mutable std::map<double, std::unique_ptr<LinearPropagator>> cache_;
};

PrimitiveState step_strang(const PrimitiveState& state, double dt,
                           StepOptions options = {});

/// Dealiases every field and recomputes phi.
void normalize_state(PrimitiveState& state);

struct TrajectoryOptions {
  StepOptions step;
  int sample_every = 1;
};

/// Integrates to params.t_end calling observer(state) at t = 0 and every
/// sample_every steps (and at the final time). Returns the final state.
PrimitiveState run_trajectory(
    const PrimitiveState& initial, const TrajectoryOptions& options,
    const std::function<void(const PrimitiveState&)>& observer);

}  // namespace nsp2d
