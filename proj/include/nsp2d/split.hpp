#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nsp2d/config.hpp"
#include "nsp2d/fit.hpp"
#include "nsp2d/solver.hpp"

namespace nsp2d {

/// main solves the irrotational system, pert = (n, v, psi) carries the rest.
struct SplitState {
  PrimitiveState main;
  PrimitiveState pert;

  double time() const { return main.time; }
  /// main + pert as one primitive state.
  PrimitiveState combined() const;
};

/// Tendency of (n, v) given the main state at the same time level:
///   d_t n = -div((1 + rho) v + n u + n v)
///   d_t v = -(u.grad v + v.grad u + v.grad v) - grad n + grad psi + eps L v
///           + eps (1/(1 + rho + n) - 1)(L v + L u),   L = Lap + grad div.
Tendency rhs_perturbation(const PrimitiveState& main, const PrimitiveState& pert);
/// Same without the linear part -div v, -grad n + grad psi + eps L v.
Tendency rhs_perturbation_nonlinear(const PrimitiveState& main,
                                    const PrimitiveState& pert);

/// Advances both subsystems by dt with fixed ordering: main first, then
/// pert by half linear / midpoint / half linear, with the main state taken
/// at t for the first stage and as the average of t and t + dt for the
/// midpoint stage.
class SplitStepper {
 public:
  SplitStepper(const Grid2D& grid, double epsilon, double dt);
  SplitState step(const SplitState& split) const;
  double dt() const { return dt_; }

 private:
  StrangStepper main_;
  LinearPropagator pert_half_;
  double dt_;
};

SplitState evolve_split(const SplitState& split, double dt);

/// sum_{|alpha|<=3} 1/2 int (1 + rho + n)|d^alpha v|^2 + |d^alpha n|^2
///                        + |d^alpha grad psi|^2.
double energy_E3(const PrimitiveState& pert, const PrimitiveState& main);

inline double lifespan_threshold(double epsilon, double theta) {
  return 4.0 * theta * theta * std::pow(epsilon, 2.0 - theta);
}

struct LifespanResult {
  double epsilon = 0.0;
  double theta = 0.0;
  double threshold = 0.0;
  double t_star = 0.0;
  double t_cap = 0.0;
  bool crossed = false;
  bool aborted = false;
  std::string abort_reason;
  std::vector<Sample> energy_series;
};

/// Split data for a probe: the calibrated irrotational part goes to main,
/// the calibrated vortex to pert.
SplitState make_split_initial(const ScenarioConfig& config);

/// Integrates until E3 exceeds the threshold or t reaches
/// t_cap = t_cap_factor * epsilon^{-(1 - theta)}. The config supplies grid,
/// dt, kappa0, data profile and seed; epsilon and theta override it.
LifespanResult lifespan_probe(double epsilon, double theta,
                              const ScenarioConfig& config);

}  // namespace nsp2d
