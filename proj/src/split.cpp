#include "nsp2d/split.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsp2d/initial_data.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/norms.hpp"

namespace nsp2d {

namespace {

SpectralField dealiased_from(const Grid2D& g, const std::vector<double>& v) {
  auto f = SpectralField::from_physical(g, std::span<const double>(v));
  dealias_in_place(f);
  return f;
}

SpectralField lame(const VectorField& u, int axis) {
  return laplacian(u[axis]) + partial(divergence(u), axis);
}

struct PhysicalVelocity {
  std::array<std::vector<double>, 2> value;
  std::array<std::array<std::vector<double>, 2>, 2> grad;  // grad[i][j] = d_j u_i
  std::array<std::vector<double>, 2> lame;
};

PhysicalVelocity physical_velocity(const VectorField& u) {
  PhysicalVelocity out;
  for (int i = 0; i < 2; ++i) {
    out.value[i] = u[i].to_physical();
    for (int j = 0; j < 2; ++j) out.grad[i][j] = partial(u[i], j).to_physical();
    out.lame[i] = lame(u, i).to_physical();
  }
  return out;
}

}  // namespace

PrimitiveState SplitState::combined() const {
  return PrimitiveState(main.time, main.rho_pert + pert.rho_pert,
                        main.u + pert.u, main.params);
}

Tendency rhs_perturbation_nonlinear(const PrimitiveState& main,
                                    const PrimitiveState& pert) {
  const Grid2D& g = pert.grid();
  const std::size_t size = g.size();
  const double eps = pert.params.epsilon;
  const auto rho = main.rho_pert.to_physical();
  const auto n = pert.rho_pert.to_physical();
  double lowest = 1e300;
  for (std::size_t p = 0; p < size; ++p) lowest = std::min(lowest, 1.0 + rho[p] + n[p]);
  if (!(lowest >= kVacuumFloor)) {
    std::ostringstream msg;
    msg << "density floor: min(rho + n) = " << lowest << " < " << kVacuumFloor
        << " at t = " << pert.time;
    throw NumericalAbort(msg.str(), pert);
  }
  const auto u = physical_velocity(main.u);
  const auto v = physical_velocity(pert.u);

  std::vector<double> buf(size);
  VectorField flux{SpectralField(g), SpectralField(g)};
  for (int j = 0; j < 2; ++j) {
    for (std::size_t p = 0; p < size; ++p)
      buf[p] = rho[p] * v.value[j][p] + n[p] * u.value[j][p] + n[p] * v.value[j][p];
    flux[j] = dealiased_from(g, buf);
  }
  Tendency out{-1.0 * divergence(flux), zero_vector(g)};
  for (int i = 0; i < 2; ++i) {
    for (std::size_t p = 0; p < size; ++p) {
      double adv = 0.0;
      for (int j = 0; j < 2; ++j)
        adv += u.value[j][p] * v.grad[i][j][p] + v.value[j][p] * u.grad[i][j][p] +
               v.value[j][p] * v.grad[i][j][p];
      const double weight = 1.0 / (1.0 + rho[p] + n[p]) - 1.0;
      buf[p] = -adv + eps * weight * (v.lame[i][p] + u.lame[i][p]);
    }
    out.u[i] = dealiased_from(g, buf);
  }
  return out;
}

Tendency rhs_perturbation(const PrimitiveState& main, const PrimitiveState& pert) {
  return rhs_linear(pert, SystemKind::full) + rhs_perturbation_nonlinear(main, pert);
}

SplitStepper::SplitStepper(const Grid2D& grid, double epsilon, double dt)
    : main_(grid, epsilon, dt, StepOptions{SystemKind::irrotational, true}),
      pert_half_(grid, epsilon, 0.5 * dt, SystemKind::full),
      dt_(dt) {}

SplitState SplitStepper::step(const SplitState& split) const {
  const auto& main_now = split.main;
  auto main_next = main_.step(main_now);
  const PrimitiveState main_mid(main_now.time + 0.5 * dt_,
                                0.5 * (main_now.rho_pert + main_next.rho_pert),
                                0.5 * (main_now.u + main_next.u), main_now.params);

  PrimitiveState p = split.pert;
  pert_half_.apply_primitive(p.rho_pert, p.u);
  const auto k1 = rhs_perturbation_nonlinear(main_now, p);
  PrimitiveState stage = p;
  stage.rho_pert.add_scaled(k1.rho, 0.5 * dt_);
  for (int i = 0; i < 2; ++i) stage.u[i].add_scaled(k1.u[i], 0.5 * dt_);
  const auto k2 = rhs_perturbation_nonlinear(main_mid, stage);
  p.rho_pert.add_scaled(k2.rho, dt_);
  for (int i = 0; i < 2; ++i) p.u[i].add_scaled(k2.u[i], dt_);
  pert_half_.apply_primitive(p.rho_pert, p.u);
  p.time = split.pert.time + dt_;
  normalize_state(p);
  return {std::move(main_next), std::move(p)};
}

SplitState evolve_split(const SplitState& split, double dt) {
  return SplitStepper(split.main.grid(), split.main.params.epsilon, dt).step(split);
}

double energy_E3(const PrimitiveState& pert, const PrimitiveState& main) {
  const auto rho = main.rho_pert.to_physical();
  auto weight = pert.rho_pert.to_physical();
  for (std::size_t p = 0; p < weight.size(); ++p) weight[p] += rho[p];
  const auto e = gradient(poisson_solve(pert.rho_pert));
  const SpectralField kinetic[] = {pert.u[0], pert.u[1]};
  const SpectralField potential[] = {pert.rho_pert, e[0], e[1]};
  return 0.5 * (derivative_energy(kinetic, 3, &weight) +
                derivative_energy(potential, 3));
}

SplitState make_split_initial(const ScenarioConfig& config) {
  auto parts = generate_initial_parts(config);
  SplitState s{std::move(parts.irrotational), std::move(parts.rotational)};
  normalize_state(s.main);
  normalize_state(s.pert);
  return s;
}

LifespanResult lifespan_probe(double epsilon, double theta,
                              const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  cfg.params.epsilon = epsilon;
  cfg.params.theta = theta;
  cfg.init.profile = InitProfile::combined;
  cfg.init.target = CalibrationTarget::y_norm;
  cfg.validate();

  LifespanResult r;
  r.epsilon = epsilon;
  r.theta = theta;
  r.threshold = lifespan_threshold(epsilon, theta);
  r.t_cap = cfg.sweep.t_cap_factor * std::pow(epsilon, -(1.0 - theta));
  r.t_star = r.t_cap;

  auto split = make_split_initial(cfg);
  r.energy_series.push_back({0.0, energy_E3(split.pert, split.main)});
  if (theta == 0.0) {
    r.energy_series.push_back({r.t_cap, 0.0});
    return r;
  }
  const double dt = cfg.params.dt;
  const auto steps = static_cast<long long>(std::ceil(r.t_cap / dt - 1e-9));
  const SplitStepper stepper(split.main.grid(), epsilon, dt);
  try {
    for (long long k = 1; k <= steps; ++k) {
      split = stepper.step(split);
      const double t = k * dt;
      if (k % cfg.sweep.energy_every != 0 && k != steps) continue;
      const double e3 = energy_E3(split.pert, split.main);
      r.energy_series.push_back({std::min(t, r.t_cap), e3});
      if (e3 > r.threshold) {
        r.crossed = true;
        r.t_star = std::min(t, r.t_cap);
        break;
      }
    }
  } catch (const NumericalAbort& e) {
    r.aborted = true;
    r.abort_reason = e.what();
    r.t_star = std::min(split.time(), r.t_cap);
  }
  return r;
}

}  // namespace nsp2d
