#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/parallel.hpp"
#include "nsp2d/solver.hpp"

using namespace nsp2d;
using fixtures::kPi;

namespace {

SimulationParams params(double eps = 0.1, double dt = 0.05, double t_end = 1.0) {
  SimulationParams p;
  p.epsilon = eps;
  p.dt = dt;
  p.t_end = t_end;
  return p;
}

/// Smooth irrotational state of size `amp` on a 64^2 box of side 32.
PrimitiveState smooth_state(double amp, double eps = 0.1, int n = 64) {
  const Grid2D g(n, 32.0);
  auto rho = fixtures::from_function(g, [](double x, double y) {
    const double r2 = x * x + y * y;
    return (1.0 - r2 / 9.0) * std::exp(-r2 / 18.0);
  });
  rho(0, 0) = 0.0;
  const auto pot = fixtures::gaussian(g, 2.5, 1.0, -0.5);
  return PrimitiveState(0.0, dealias(Complex(amp) * rho),
                        Complex(amp) * VectorField{dealias(partial(pot, 0)), dealias(partial(pot, 1))},
                        params(eps));
}

double state_distance(const PrimitiveState& a, const PrimitiveState& b) {
  const double d = (a.rho_pert - b.rho_pert).l2_norm();
  return std::hypot(d, l2_norm(a.u - b.u));
}

double relative_curl(const VectorField& u) {
  return curl(u).l2_norm() / std::max(l2_norm(u), 1e-300);
}

}  // namespace

TEST_CASE("equilibrium has zero tendency") {
  const Grid2D g(32, 20.0);
  const auto s = PrimitiveState::equilibrium(g, params());
  for (auto kind : {SystemKind::irrotational, SystemKind::full}) {
    const auto t = rhs_primitive(s, kind);
    CHECK(fixtures::max_coeff(t.rho) == 0.0);
    CHECK(fixtures::max_coeff(t.u[0]) == 0.0);
    CHECK(fixtures::max_coeff(t.u[1]) == 0.0);
  }
}

TEST_CASE("single density mode drives u by -ik(1 + 1/|k|^2) rho") {
  const Grid2D g(32, 2.0 * kPi * 3.0);
  SpectralField rho(g);
  rho(2, 1) = Complex(1e-3, 2e-3);
  rho(30, 31) = std::conj(rho(2, 1));
  const PrimitiveState s(0.0, rho, zero_vector(g), params());
  const auto t = rhs_primitive(s);
  const double k1 = g.wavenumber(2), k2 = g.wavenumber(1);
  const double k_sq = k1 * k1 + k2 * k2;
  const Complex factor = -(1.0 + 1.0 / k_sq) * rho(2, 1);
  CHECK(std::abs(t.u[0](2, 1) - Complex(0.0, k1) * factor) <= 1e-15);
  CHECK(std::abs(t.u[1](2, 1) - Complex(0.0, k2) * factor) <= 1e-15);
  CHECK(fixtures::max_coeff(t.rho) == 0.0);
}

TEST_CASE("linear tendency is the generator -A-hat in symmetrized variables") {
  const Grid2D g(64, 64.0 * kPi);
  const double eps = 0.2;
  auto rho = fixtures::random_band_limited(g, 15, 31);
  rho(0, 0) = 0.0;
  const auto u = gradient(fixtures::random_band_limited(g, 15, 32));
  const PrimitiveState s(0.0, Complex(1e-3) * rho, Complex(1e-3) * u, params(eps));
  const auto lin = rhs_linear(s, SystemKind::irrotational);
  const auto du = to_symmetrized(PrimitiveState(0.0, lin.rho, lin.u, s.params));
  const auto U = to_symmetrized(s);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const auto sym = eval_linear_symbol(g.wavenumber(i), g.wavenumber(j), eps);
      const Complex ea = -(sym.a_hat.a11 * U.a(i, j) + sym.a_hat.a12 * U.c(i, j));
      const Complex ec = -(sym.a_hat.a21 * U.a(i, j) + sym.a_hat.a22 * U.c(i, j));
      if (sym.k_sq == 0.0) continue;
      worst = std::max({worst, std::abs(du.a(i, j) - ea), std::abs(du.c(i, j) - ec)});
      scale = std::max({scale, std::abs(ea), std::abs(ec)});
    }
  CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("symmetrized nonlinearity: zero cases") {
  const Grid2D g(32, 40.0);
  SymmetrizedState zero{0.0, SpectralField(g), SpectralField(g)};
  const auto f0 = rhs_symmetrized(zero);
  CHECK(fixtures::max_coeff(f0.a) == 0.0);
  CHECK(fixtures::max_coeff(f0.c) == 0.0);
  SymmetrizedState only_a{0.0, fixtures::random_band_limited(g, 6, 33), SpectralField(g)};
  const auto f1 = rhs_symmetrized(only_a);
  CHECK(fixtures::max_coeff(f1.a) == 0.0);
  CHECK(fixtures::max_coeff(f1.c) == 0.0);
}

TEST_CASE("symmetrized nonlinearity agrees with the primitive one") {
  const Grid2D g(64, 64.0 * kPi);
  auto rho = fixtures::random_band_limited(g, 12, 34);
  rho(0, 0) = 0.0;
  const auto u = gradient(fixtures::random_band_limited(g, 12, 35));
  const PrimitiveState s(0.0, Complex(1e-2) * rho, Complex(1e-2) * u, params());
  const auto nl = rhs_nonlinear(s, SystemKind::irrotational);
  const auto mapped = to_symmetrized(PrimitiveState(0.0, nl.rho, nl.u, s.params));
  const auto f = rhs_symmetrized(to_symmetrized(s));
  CHECK(relative_difference(f.a, mapped.a) <= 1e-9);
  CHECK(relative_difference(f.c, mapped.c) <= 1e-9);
}

TEST_CASE("without nonlinearity a step is the exact linear flow") {
  const auto s = smooth_state(1e-2);
  StepOptions opts;
  opts.nonlinear = false;
  const auto stepped = step_strang(s, 0.3, opts);
  auto rho = s.rho_pert;
  auto u = s.u;
  LinearPropagator(s.grid(), s.params.epsilon, 0.3).apply_primitive(rho, u);
  CHECK(relative_difference(stepped.rho_pert, rho) == 0.0);
  CHECK(relative_difference(stepped.u[0], u[0]) == 0.0);
  CHECK(relative_difference(stepped.u[1], u[1]) == 0.0);
}

TEST_CASE("small single-mode data follows the Green matrix to t = 1") {
  const Grid2D g(32, 2.0 * kPi * 4.0);
  const double eps = 0.1;
  SpectralField rho(g);
  rho(3, 0) = 1e-7;
  rho(29, 0) = 1e-7;
  PrimitiveState s(0.0, rho, zero_vector(g), params(eps, 0.05, 1.0));
  const auto end = run_trajectory(s, {}, nullptr);
  SymmetrizedState u = to_symmetrized(s);
  const auto ref = propagate_linear(u, 1.0, eps);
  const auto got = to_symmetrized(end);
  CHECK(std::abs(got.a(3, 0) - ref.a(3, 0)) <= 1e-8 * std::abs(u.a(3, 0)));
  CHECK(std::abs(got.c(3, 0) - ref.c(3, 0)) <= 1e-8 * std::abs(u.a(3, 0)));
}

TEST_CASE("Strang stepping is second order") {
  for (auto kind : {SystemKind::irrotational, SystemKind::full}) {
    const auto s = smooth_state(0.05);
    StepOptions opts;
    opts.kind = kind;
    auto integrate = [&](double dt) {
      const StrangStepper stepper(s.grid(), s.params.epsilon, dt, opts);
      PrimitiveState x = s;
      const int steps = static_cast<int>(std::lround(1.0 / dt));
      for (int k = 0; k < steps; ++k) x = stepper.step(x);
      return x;
    };
    const auto a = integrate(0.1), b = integrate(0.05), c = integrate(0.025);
    const double order = std::log2(state_distance(a, b) / state_distance(b, c));
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
  }
}

TEST_CASE("run_trajectory with t_end = 0 returns the initial state once") {
  auto s = smooth_state(1e-2);
  s.params.t_end = 0.0;
  int calls = 0;
  const auto end = run_trajectory(s, {}, [&](const PrimitiveState& x) {
    ++calls;
    CHECK(relative_difference(x.rho_pert, s.rho_pert) == 0.0);
  });
  CHECK(calls == 1);
  CHECK(relative_difference(end.u[0], s.u[0]) == 0.0);
}

TEST_CASE("mass is conserved and trajectories are deterministic") {
  auto s = smooth_state(0.05);
  s.rho_pert(0, 0) = 0.01;
  s.params.t_end = 2.0;
  TrajectoryOptions opts;
  opts.step.kind = SystemKind::full;
  double drift = 0.0;
  const auto a = run_trajectory(s, opts, [&](const PrimitiveState& x) {
    drift = std::max(drift, std::abs(x.rho_pert.mean() - s.rho_pert.mean()));
  });
  CHECK(drift <= 1e-10 * 2.0);
  const int before = thread_count();
  set_thread_count(before == 1 ? 3 : 1);
  const auto b = run_trajectory(s, opts, nullptr);
  set_thread_count(before);
  for (std::size_t k = 0; k < a.rho_pert.grid().size(); ++k) {
    REQUIRE(a.rho_pert.coefficients()[k] == b.rho_pert.coefficients()[k]);
    REQUIRE(a.u[0].coefficients()[k] == b.u[0].coefficients()[k]);
  }
}

TEST_CASE("curl stays at round-off in the irrotational system") {
  auto s = smooth_state(0.05);
  s.params.t_end = 3.0;
  double worst = 0.0;
  run_trajectory(s, {}, [&](const PrimitiveState& x) { worst = std::max(worst, relative_curl(x.u)); });
  CHECK(worst <= 1e-8);
}

TEST_CASE("vacuum guard aborts with the offending state") {
  const Grid2D g(32, 20.0);
  auto rho = fixtures::from_function(g, [](double x, double y) {
    return -0.9 * std::exp(-(x * x + y * y) / 4.0);
  });
  const PrimitiveState s(1.5, rho, zero_vector(g), params());
  try {
    (void)rhs_nonlinear(s, SystemKind::full);
    FAIL("expected NumericalAbort");
  } catch (const NumericalAbort& e) {
    REQUIRE(e.snapshot().has_value());
    CHECK(e.snapshot()->time == 1.5);
    CHECK(std::string(e.what()).find("vacuum") != std::string::npos);
  }
}

TEST_CASE("CFL halving covers the step and hopeless steps abort") {
  const Grid2D g(32, 32.0);
  const auto pot = fixtures::gaussian(g, 3.0);
  auto u = gradient(pot);
  const double speed = max_speed(u);
  const double target = 0.05;
  PrimitiveState s(0.0, SpectralField(g), Complex(target / speed) * u, params(0.1, 1.0));
  // dx = 1, so h max|u| <= 0.5 needs h <= 10 here; use dt = 20 to force one halving.
  const auto out = StrangStepper(g, 0.1, 20.0).step(s);
  CHECK(out.time == doctest::Approx(20.0));

  PrimitiveState fast(0.0, SpectralField(g), Complex(1e5 / speed) * u, params());
  CHECK_THROWS_AS((void)StrangStepper(g, 0.1, 1.0).step(fast), NumericalAbort);
}

TEST_CASE("larger viscosity dissipates at least as much") {
  std::vector<double> dissipated;
  for (double eps : {0.05, 0.1, 0.2}) {
    auto s = smooth_state(0.05, eps);
    s.params.t_end = 2.0;
    double integral = 0.0, last_t = 0.0, last_v = 0.0;
    bool first = true;
    run_trajectory(s, {}, [&](const PrimitiveState& x) {
      double v = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double n = partial(x.u[i], j).l2_norm();
          v += n * n;
        }
      if (!first) integral += 0.5 * (x.time - last_t) * (v + last_v);
      first = false;
      last_t = x.time;
      last_v = v;
    });
    dissipated.push_back(eps * integral);
  }
  CHECK(dissipated[1] >= 0.99 * dissipated[0]);
  CHECK(dissipated[2] >= 0.99 * dissipated[1]);
}
