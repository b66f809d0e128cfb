#include "nsp2d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nsp2d/multipliers.hpp"

namespace nsp2d {

namespace {

SpectralField dealiased_from(const Grid2D& g, const std::vector<double>& v) {
  auto f = SpectralField::from_physical(g, std::span<const double>(v));
  dealias_in_place(f);
  return f;
}

SpectralField viscous_operator(const VectorField& u, int axis, SystemKind kind) {
  if (kind == SystemKind::irrotational) return 2.0 * laplacian(u[axis]);
  return laplacian(u[axis]) + partial(divergence(u), axis);
}

void check_vacuum(const PrimitiveState& state, const std::vector<double>& rho) {
  const double lowest = 1.0 + *std::min_element(rho.begin(), rho.end());
  if (!(lowest >= kVacuumFloor)) {
    std::ostringstream msg;
    msg << "vacuum guard: min(1 + rho) = " << lowest << " < " << kVacuumFloor
        << " at t = " << state.time;
    throw NumericalAbort(msg.str(), state);
  }
}

}  // namespace

Tendency operator+(const Tendency& a, const Tendency& b) {
  return {a.rho + b.rho, a.u + b.u};
}

Tendency rhs_linear(const PrimitiveState& state, SystemKind kind) {
  const double eps = state.params.epsilon;
  const auto phi = poisson_solve(state.rho_pert);
  Tendency out{-1.0 * divergence(state.u), zero_vector(state.grid())};
  const auto force = gradient(phi - state.rho_pert);
  for (int i = 0; i < 2; ++i) {
    out.u[i] = force[i];
    out.u[i].add_scaled(viscous_operator(state.u, i, kind), eps);
  }
  return out;
}

Tendency rhs_nonlinear(const PrimitiveState& state, SystemKind kind) {
  const Grid2D& g = state.grid();
  const std::size_t size = g.size();
  const auto rho = state.rho_pert.to_physical();
  check_vacuum(state, rho);

  std::array<std::vector<double>, 2> u;
  std::array<std::array<std::vector<double>, 2>, 2> du;  // du[i][j] = d_j u_i
  for (int i = 0; i < 2; ++i) {
    u[i] = state.u[i].to_physical();
    for (int j = 0; j < 2; ++j) du[i][j] = partial(state.u[i], j).to_physical();
  }

  std::vector<double> buf(size);
  VectorField flux{SpectralField(g), SpectralField(g)};
  for (int j = 0; j < 2; ++j) {
    for (std::size_t p = 0; p < size; ++p) buf[p] = rho[p] * u[j][p];
    flux[j] = dealiased_from(g, buf);
  }
  Tendency out{-1.0 * divergence(flux), zero_vector(g)};

  for (int i = 0; i < 2; ++i) {
    for (std::size_t p = 0; p < size; ++p)
      buf[p] = -(u[0][p] * du[i][0][p] + u[1][p] * du[i][1][p]);
    out.u[i] = dealiased_from(g, buf);
  }

  if (kind == SystemKind::full) {
    const double eps = state.params.epsilon;
    for (int i = 0; i < 2; ++i) {
      const auto visc = viscous_operator(state.u, i, kind).to_physical();
      for (std::size_t p = 0; p < size; ++p)
        buf[p] = eps * (1.0 / (1.0 + rho[p]) - 1.0) * visc[p];
      out.u[i] += dealiased_from(g, buf);
    }
  }
  return out;
}

Tendency rhs_primitive(const PrimitiveState& state, SystemKind kind) {
  return rhs_linear(state, kind) + rhs_nonlinear(state, kind);
}

SymmetrizedState rhs_symmetrized(const SymmetrizedState& state) {
  const Grid2D& g = state.a.grid();
  const std::size_t size = g.size();
  const auto rho = map_modes(state.a, [](double k1, double k2) -> Complex {
                     return symbols::abs_xi(k1, k2) / symbols::bracket(k1, k2);
                   }).to_physical();
  const auto rc = riesz(state.c);
  const auto u1 = (-1.0 * rc[0]).to_physical();
  const auto u2 = (-1.0 * rc[1]).to_physical();

  std::vector<double> buf(size);
  VectorField flux{SpectralField(g), SpectralField(g)};
  for (std::size_t p = 0; p < size; ++p) buf[p] = rho[p] * u1[p];
  flux[0] = dealiased_from(g, buf);
  for (std::size_t p = 0; p < size; ++p) buf[p] = rho[p] * u2[p];
  flux[1] = dealiased_from(g, buf);
  // F1 = -<nabla> R.(rho u) with R. = div/|nabla|.
  auto f1 = map_modes(riesz_divergence(flux), [](double k1, double k2) -> Complex {
    return -symbols::bracket(k1, k2);
  });

  for (std::size_t p = 0; p < size; ++p) buf[p] = 0.5 * (u1[p] * u1[p] + u2[p] * u2[p]);
  auto f2 = map_modes(dealiased_from(g, buf), [](double k1, double k2) -> Complex {
    return symbols::abs_xi(k1, k2);
  });
  return {state.time, std::move(f1), std::move(f2)};
}

double min_density(const SpectralField& rho_pert) {
  const auto rho = rho_pert.to_physical();
  return 1.0 + *std::min_element(rho.begin(), rho.end());
}

double max_speed(const VectorField& u) {
  const auto u1 = u[0].to_physical();
  const auto u2 = u[1].to_physical();
  double best = 0.0;
  for (std::size_t p = 0; p < u1.size(); ++p)
    best = std::max(best, std::hypot(u1[p], u2[p]));
  return best;
}

void normalize_state(PrimitiveState& state) {
  dealias_in_place(state.rho_pert);
  dealias_in_place(state.u[0]);
  dealias_in_place(state.u[1]);
  state.refresh_potential();
}

StrangStepper::StrangStepper(const Grid2D& grid, double epsilon, double dt,
                             StepOptions options)
    : grid_(grid), epsilon_(epsilon), dt_(dt), options_(options) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
}

const LinearPropagator& StrangStepper::propagator(double h) const {
  auto it = cache_.find(h);
  if (it == cache_.end()) {
    it = cache_
             .emplace(h, std::make_unique<LinearPropagator>(grid_, epsilon_, h,
                                                            options_.kind))
             .first;
  }
  return *it->second;
}

PrimitiveState StrangStepper::raw_step(const PrimitiveState& state,
                                       double h) const {
  PrimitiveState s = state;
  if (!options_.nonlinear) {
    propagator(h).apply_primitive(s.rho_pert, s.u);
    s.time = state.time + h;
    s.refresh_potential();
    return s;
  }
  const auto& half = propagator(0.5 * h);
  half.apply_primitive(s.rho_pert, s.u);

  const auto k1 = rhs_nonlinear(s, options_.kind);
  PrimitiveState mid = s;
  mid.rho_pert.add_scaled(k1.rho, 0.5 * h);
  for (int i = 0; i < 2; ++i) mid.u[i].add_scaled(k1.u[i], 0.5 * h);
  const auto k2 = rhs_nonlinear(mid, options_.kind);
  s.rho_pert.add_scaled(k2.rho, h);
  for (int i = 0; i < 2; ++i) s.u[i].add_scaled(k2.u[i], h);

  half.apply_primitive(s.rho_pert, s.u);
  s.time = state.time + h;
  normalize_state(s);
  return s;
}

PrimitiveState StrangStepper::step(const PrimitiveState& state) const {
  const double dx = grid_.dx();
  int level = 0;
  long long done = 0;
  PrimitiveState s = state;
  const double t0 = state.time;
  while (done < (1LL << level)) {
    double h = std::ldexp(dt_, -level);
    while (options_.nonlinear && h * max_speed(s.u) > kCflNumber * dx) {
      if (++level > kMaxDtHalvings) {
        std::ostringstream msg;
        msg << "CFL: time step rejected " << kMaxDtHalvings
            << " times at t = " << s.time << " (max |u| = " << max_speed(s.u)
            << ")";
        throw NumericalAbort(msg.str(), s);
      }
      done *= 2;
      h *= 0.5;
    }
    s = raw_step(s, h);
    ++done;
    s.time = t0 + dt_ * std::ldexp(static_cast<double>(done), -level);
  }
  return s;
}

PrimitiveState step_strang(const PrimitiveState& state, double dt,
                           StepOptions options) {
  return StrangStepper(state.grid(), state.params.epsilon, dt, options)
      .step(state);
}

PrimitiveState run_trajectory(
    const PrimitiveState& initial, const TrajectoryOptions& options,
    const std::function<void(const PrimitiveState&)>& observer) {
  const auto& p = initial.params;
  p.validate();
  const double t_end = p.t_end;
  const long long whole = static_cast<long long>(std::floor(t_end / p.dt + 1e-9));
  const double rest = t_end - whole * p.dt;
  const int every = std::max(1, options.sample_every);

  PrimitiveState s = initial;
  normalize_state(s);
  if (observer) observer(s);
  if (whole > 0) {
    StrangStepper stepper(s.grid(), p.epsilon, p.dt, options.step);
    for (long long k = 1; k <= whole; ++k) {
      s = stepper.step(s);
      s.time = initial.time + k * p.dt;
      if (observer && (k % every == 0 || (k == whole && rest <= 1e-12)))
        observer(s);
    }
  }
  if (rest > 1e-12 * std::max(1.0, t_end)) {
    StrangStepper tail(s.grid(), p.epsilon, rest, options.step);
    s = tail.step(s);
    s.time = initial.time + t_end;
    if (observer) observer(s);
  }
  return s;
}

}  // namespace nsp2d
