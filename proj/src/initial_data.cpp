#include "nsp2d/initial_data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nsp2d/cutoffs.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/norms.hpp"
#include "nsp2d/rng.hpp"

namespace nsp2d {

namespace {

constexpr std::uint64_t kIrrotationalStream = 1;
constexpr std::uint64_t kVortexStream = 2;

double base_width(const SimulationParams& params) {
  return std::max(2.0, 1.5 * std::sqrt(params.epsilon / params.kappa0));
}

SpectralField gaussian(const Grid2D& g, double c1, double c2, double width) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n(); ++i) {
    const double x1 = g.coordinate(i) - c1;
    for (int j = 0; j < g.n(); ++j) {
      const double x2 = g.coordinate(j) - c2;
      v[g.flat(i, j)] = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * width * width));
    }
  }
  return dealias(SpectralField::from_physical(g, std::span<const double>(v)));
}

PrimitiveState scaled(const PrimitiveState& s, double a) {
  return PrimitiveState(s.time, a * s.rho_pert, a * s.u, s.params);
}

}  // namespace

PrimitiveState irrotational_shape(const Grid2D& grid,
                                  const SimulationParams& params,
                                  std::uint64_t seed) {
  CounterRng rng(seed, kIrrotationalStream);
  const CutoffFamily cutoffs(params.epsilon, params.kappa0);
  const double width = base_width(params) * rng.uniform(0.9, 1.1);
  const double r1 = rng.uniform(-1.0, 1.0), r2 = rng.uniform(-1.0, 1.0);
  const double p1 = rng.uniform(-1.0, 1.0), p2 = rng.uniform(-1.0, 1.0);
  const double mix = rng.uniform(0.5, 1.0);

  // Zero net charge keeps grad phi localized.
  auto rho = band_filter((-width * width) * laplacian(gaussian(grid, r1, r2, width)),
                         cutoffs, Band::low_total);
  rho(0, 0) = 0.0;
  const auto potential =
      band_filter(gaussian(grid, p1, p2, width), cutoffs, Band::low_total);
  // Scale the potential so its gradient is comparable to rho.
  auto u = (mix * width) * gradient(potential);
  return PrimitiveState(0.0, std::move(rho), std::move(u), params);
}

PrimitiveState vortex_shape(const Grid2D& grid, const SimulationParams& params,
                            std::uint64_t seed) {
  CounterRng rng(seed, kVortexStream);
  const double width = base_width(params) * rng.uniform(0.9, 1.1);
  const double c1 = rng.uniform(-1.0, 1.0), c2 = rng.uniform(-1.0, 1.0);
  const auto psi = gaussian(grid, c1, c2, width);
  VectorField u{-1.0 * partial(psi, 1), partial(psi, 0)};
  return PrimitiveState(0.0, SpectralField(grid), std::move(u), params);
}

double calibrate_amplitude(const std::function<double(double)>& measure,
                           double target, double rel_tol) {
  if (target == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  double m_hi = measure(hi);
  for (int k = 0; k < 200 && !(m_hi >= target); ++k) {
    lo = hi;
    hi *= 2.0;
    m_hi = measure(hi);
  }
  if (!(m_hi >= target)) {
    std::ostringstream msg;
    msg << "calibration failed to bracket target " << target
        << "; measured " << m_hi << " at amplitude " << hi;
    throw std::runtime_error(msg.str());
  }
  double mid = hi;
  for (int k = 0; k < 200; ++k) {
    mid = 0.5 * (lo + hi);
    const double m = measure(mid);
    if (std::abs(m - target) <= rel_tol * target) break;
    (m < target ? lo : hi) = mid;
  }
  return mid;
}

double velocity_h3_norm(const PrimitiveState& state) {
  return hs_norm(std::span<const SpectralField>(state.u), 3.0);
}

PrimitiveState InitialData::combined() const {
  return PrimitiveState(0.0, irrotational.rho_pert + rotational.rho_pert,
                        irrotational.u + rotational.u, irrotational.params);
}

InitialData generate_initial_parts(const ScenarioConfig& config) {
  config.validate();
  const Grid2D grid = config.make_grid();
  const auto& p = config.params;
  InitialData out{PrimitiveState::equilibrium(grid, p),
                  PrimitiveState::equilibrium(grid, p)};
  if (p.theta == 0.0) return out;

  const bool want_irrot = config.init.profile != InitProfile::gaussian_vortex;
  const bool want_vortex = config.init.profile != InitProfile::gaussian_irrotational;
  const CutoffFamily cutoffs(p.epsilon, p.kappa0);

  if (want_irrot) {
    const auto shape = irrotational_shape(grid, p, config.init.seed);
    const double target = p.theta / config.init.calibration_c;
    auto measure = [&](double a) {
      const auto s = scaled(shape, a);
      if (config.init.target == CalibrationTarget::y_norm)
        return y_norm(s, config.init.y_sigma, cutoffs);
      const auto comps = primitive_components(s);
      return hs_norm(comps, 3.0);
    };
    const double a = calibrate_amplitude(measure, target);
    out.irrotational = scaled(shape, a);
    out.irrotational_norm = measure(a);
  }
  if (want_vortex) {
    const auto shape = vortex_shape(grid, p, config.init.seed);
    const double target = p.theta * p.epsilon;
    auto measure = [&](double a) { return velocity_h3_norm(scaled(shape, a)); };
    const double a = calibrate_amplitude(measure, target);
    out.rotational = scaled(shape, a);
    out.rotational_norm = measure(a);
  }
  return out;
}

PrimitiveState generate_initial(const ScenarioConfig& config) {
  return generate_initial_parts(config).combined();
}

}  // namespace nsp2d
