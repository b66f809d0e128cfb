#include "nsp2d/linear_propagator.hpp"

#include <algorithm>
#include <cmath>

#include "nsp2d/multipliers.hpp"

namespace nsp2d {

LinearPropagator::LinearPropagator(const Grid2D& grid, double epsilon, double t,
                                   SystemKind kind)
    : grid_(grid), epsilon_(epsilon), t_(t) {
  const int n = grid.n();
  green_.resize(grid.size());
  rotational_decay_.resize(grid.size());
  // Viscous rate of the divergence-free part: eps|xi|^2 for Lap + grad div,
  // 2 eps|xi|^2 when the operator is 2 Lap.
  const double rot_factor = kind == SystemKind::full ? 1.0 : 2.0;
  parallel_rows(n, [&](int i) {
    const double k1 = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = grid.wavenumber(j);
      const auto sym = eval_linear_symbol(k1, k2, epsilon);
      const std::size_t idx = grid.flat(i, j);
      green_[idx] = green_entries(t, sym);
      rotational_decay_[idx] = std::exp(-rot_factor * epsilon * sym.k_sq * t);
    }
  });
}

SymmetrizedState LinearPropagator::apply(const SymmetrizedState& u) const {
  SymmetrizedState out{u.time + t_, SpectralField(grid_), SpectralField(grid_)};
  const auto a = u.a.coefficients();
  const auto c = u.c.coefficients();
  auto oa = out.a.coefficients();
  auto oc = out.c.coefficients();
  for (std::size_t idx = 0; idx < green_.size(); ++idx) {
    const auto& g = green_[idx];
    oa[idx] = g.g1 * a[idx] - g.g2 * c[idx];
    oc[idx] = g.g2 * a[idx] + g.g3 * c[idx];
  }
  return out;
}

void LinearPropagator::apply_primitive(SpectralField& rho,
                                       VectorField& u) const {
  const int n = grid_.n();
  auto r = rho.coefficients();
  auto u1 = u[0].coefficients();
  auto u2 = u[1].coefficients();
  parallel_rows(n, [&](int i) {
    const double k1 = grid_.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = grid_.wavenumber(j);
      const double k_sq = k1 * k1 + k2 * k2;
      if (k_sq == 0.0) continue;
      const std::size_t idx = grid_.flat(i, j);
      const double kk = std::sqrt(k_sq);
      const double br = std::sqrt(1.0 + k_sq);
      const double n1 = k1 / kk;
      const double n2 = k2 / kk;
      // Longitudinal amplitude: u_par = n . u, c = i n . u = i u_par.
      const Complex u_par = n1 * u1[idx] + n2 * u2[idx];
      const Complex rot1 = u1[idx] - n1 * u_par;
      const Complex rot2 = u2[idx] - n2 * u_par;
      const Complex a = (br / kk) * r[idx];
      const Complex c = Complex(0.0, 1.0) * u_par;
      const auto& g = green_[idx];
      const Complex a_new = g.g1 * a - g.g2 * c;
      const Complex c_new = g.g2 * a + g.g3 * c;
      const Complex par_new = Complex(0.0, -1.0) * c_new;
      const double decay = rotational_decay_[idx];
      r[idx] = (kk / br) * a_new;
      u1[idx] = decay * rot1 + n1 * par_new;
      u2[idx] = decay * rot2 + n2 * par_new;
    }
  });
}

SymmetrizedState propagate_linear(const SymmetrizedState& u, double t,
                                  double epsilon) {
  return LinearPropagator(u.a.grid(), epsilon, t).apply(u);
}

SpectralField half_wave(const SpectralField& w, double t,
                        const CutoffFamily& cutoffs) {
  const double eps = cutoffs.epsilon();
  return map_modes(w, [&](double k1, double k2) -> Complex {
    const double chi = cutoffs.low_total(k1, k2);
    if (chi == 0.0) return 0.0;
    const auto sym = eval_linear_symbol(k1, k2, eps);
    return chi * std::exp(Complex(0.0, t) * sym.b);
  });
}

std::array<SpectralField, 2> diagonal_components(const SymmetrizedState& u,
                                                 const CutoffFamily& cutoffs) {
  const Grid2D& g = u.a.grid();
  const int n = g.n();
  std::array<SpectralField, 2> out{SpectralField(g), SpectralField(g)};
  const auto a = u.a.coefficients();
  const auto c = u.c.coefficients();
  auto w1 = out[0].coefficients();
  auto w2 = out[1].coefficients();
  parallel_rows(n, [&](int i) {
    const double k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = g.wavenumber(j);
      const double chi = cutoffs.low_total(k1, k2);
      if (chi == 0.0) continue;
      const auto sym = eval_linear_symbol(k1, k2, cutoffs.epsilon());
      const std::size_t idx = g.flat(i, j);
      const Complex al = chi * a[idx];
      const Complex cl = chi * c[idx];
      w1[idx] = sym.q_inv.a11 * al + sym.q_inv.a12 * cl;
      w2[idx] = sym.q_inv.a21 * al + sym.q_inv.a22 * cl;
    }
  });
  return out;
}

SpectralField extract_w(const SymmetrizedState& u,
                        const CutoffFamily& cutoffs) {
  return std::move(diagonal_components(u, cutoffs)[0]);
}

double band_max_green_norm(const Grid2D& grid, const CutoffFamily& cutoffs,
                           Band band, double t) {
  double worst = 0.0;
  const int n = grid.n();
  for (int i = 0; i < n; ++i) {
    if (grid.is_nyquist(i)) continue;
    const double k1 = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      if (grid.is_nyquist(j)) continue;
      const double k2 = grid.wavenumber(j);
      if (band_value(cutoffs, band, k1, k2) <= 0.0) continue;
      const auto sym = eval_linear_symbol(k1, k2, cutoffs.epsilon());
      worst = std::max(worst, green_matrix(t, sym).spectral_norm());
    }
  }
  return worst;
}

std::size_t band_mode_count(const Grid2D& grid, const CutoffFamily& cutoffs,
                            Band band) {
  std::size_t count = 0;
  for (int i = 0; i < grid.n(); ++i) {
    if (grid.is_nyquist(i)) continue;
    for (int j = 0; j < grid.n(); ++j) {
      if (grid.is_nyquist(j)) continue;
      if (band_value(cutoffs, band, grid.wavenumber(i), grid.wavenumber(j)) >
          0.0)
        ++count;
    }
  }
  return count;
}

}  // namespace nsp2d
