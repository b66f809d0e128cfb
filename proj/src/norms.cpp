#include "nsp2d/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nsp2d/linear_propagator.hpp"
#include "nsp2d/multipliers.hpp"

namespace nsp2d {

namespace {

double japanese_t(double t) { return std::sqrt(1.0 + t * t); }

std::vector<std::vector<Complex>> physical_all(
    std::span<const SpectralField> fields) {
  std::vector<std::vector<Complex>> out;
  out.reserve(fields.size());
  for (const auto& f : fields) out.push_back(f.to_physical_complex());
  return out;
}

std::vector<SpectralField> filtered(std::span<const SpectralField> fields,
                                    const CutoffFamily& cutoffs, Band band) {
  std::vector<SpectralField> out;
  for (const auto& f : fields) out.push_back(band_filter(f, cutoffs, band));
  return out;
}

/// Multiplies every field by each coordinate x_j in physical space.
std::vector<SpectralField> times_position(std::span<const SpectralField> fields) {
  std::vector<SpectralField> out;
  if (fields.empty()) return out;
  const Grid2D& g = fields[0].grid();
  const int n = g.n();
  for (const auto& f : fields) {
    const auto phys = f.to_physical_complex();
    for (int axis = 0; axis < 2; ++axis) {
      std::vector<Complex> buf(phys.size());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double x = g.coordinate(axis == 0 ? i : j);
          buf[g.flat(i, j)] = x * phys[g.flat(i, j)];
        }
      out.push_back(SpectralField::from_physical(g, std::span<const Complex>(buf)));
    }
  }
  return out;
}

/// sum_{|alpha| <= order} k1^{2 alpha1} k2^{2 alpha2}
double multi_index_weight(double k1, double k2, int order) {
  const double a = k1 * k1;
  const double b = k2 * k2;
  double total = 0.0;
  double pa = 1.0;
  for (int i = 0; i <= order; ++i) {
    double pb = 1.0;
    for (int j = 0; i + j <= order; ++j) {
      total += pa * pb;
      pb *= b;
    }
    pa *= a;
  }
  return total;
}

}  // namespace

double lp_norm(const Grid2D& grid,
               std::span<const std::vector<Complex>> components, double p) {
  if (components.empty()) return 0.0;
  const std::size_t size = components[0].size();
  const double cell = grid.dx() * grid.dx();
  const bool sup = std::isinf(p);
  double acc = 0.0;
  for (std::size_t idx = 0; idx < size; ++idx) {
    double m2 = 0.0;
    for (const auto& comp : components) m2 += std::norm(comp[idx]);
    if (!std::isfinite(m2)) throw std::domain_error("lp_norm: non-finite sample");
    const double m = std::sqrt(m2);
    if (sup) {
      acc = std::max(acc, m);
    } else if (p == 2.0) {
      acc += m2;
    } else {
      acc += std::pow(m, p);
    }
  }
  if (sup) return acc;
  return std::pow(acc * cell, 1.0 / p);
}

double sobolev_norm(std::span<const SpectralField> fields, double s, double p) {
  if (fields.empty()) return 0.0;
  std::vector<SpectralField> lifted;
  for (const auto& f : fields) lifted.push_back(bessel(f, s));
  const auto phys = physical_all(lifted);
  return lp_norm(fields[0].grid(), phys, p);
}

double sobolev_norm(const SpectralField& f, double s, double p) {
  return sobolev_norm(std::span<const SpectralField>(&f, 1), s, p);
}

double hs_norm(std::span<const SpectralField> fields, double s) {
  if (fields.empty()) return 0.0;
  const Grid2D& g = fields[0].grid();
  double acc = 0.0;
  for (const auto& f : fields) {
    const auto c = f.coefficients();
    for (int i = 0; i < g.n(); ++i) {
      const double k1 = g.wavenumber(i);
      for (int j = 0; j < g.n(); ++j) {
        const double k2 = g.wavenumber(j);
        acc += std::pow(1.0 + k1 * k1 + k2 * k2, s) * std::norm(c[g.flat(i, j)]);
      }
    }
  }
  if (!std::isfinite(acc)) throw std::domain_error("hs_norm: non-finite data");
  return g.length() * std::sqrt(acc);
}

double hs_norm(const SpectralField& f, double s) {
  return hs_norm(std::span<const SpectralField>(&f, 1), s);
}

std::vector<SpectralField> primitive_components(const PrimitiveState& state) {
  const auto e = gradient(poisson_solve(state.rho_pert));
  return {state.rho_pert, state.u[0], state.u[1], e[0], e[1]};
}

double derivative_energy(std::span<const SpectralField> fields, int order,
                         const std::vector<double>* weight_pert) {
  if (fields.empty()) return 0.0;
  const Grid2D& g = fields[0].grid();
  const int n = g.n();
  const double area = g.length() * g.length();
  const double cell = g.dx() * g.dx();
  double total = 0.0;
  for (const auto& f : fields) {
    const auto c = f.coefficients();
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        acc += multi_index_weight(g.wavenumber(i), g.wavenumber(j), order) *
               std::norm(c[g.flat(i, j)]);
    total += area * acc;
    if (weight_pert == nullptr) continue;
    for (int a1 = 0; a1 <= order; ++a1) {
      for (int a2 = 0; a1 + a2 <= order; ++a2) {
        const auto d = map_modes(f, [a1, a2](double k1, double k2) {
          return std::pow(Complex(0.0, k1), a1) * std::pow(Complex(0.0, k2), a2);
        });
        const auto phys = d.to_physical_complex();
        double w = 0.0;
        for (std::size_t p = 0; p < phys.size(); ++p)
          w += (*weight_pert)[p] * std::norm(phys[p]);
        total += cell * w;
      }
    }
  }
  return total;
}

double energy_EN(const PrimitiveState& state, int order) {
  const auto e = gradient(poisson_solve(state.rho_pert));
  const auto rho = state.rho_pert.to_physical();
  const SpectralField kinetic[] = {state.u[0], state.u[1]};
  const SpectralField potential[] = {state.rho_pert, e[0], e[1]};
  return 0.5 * (derivative_energy(kinetic, order, &rho) +
                derivative_energy(potential, order));
}

double mass_fraction(std::span<const SpectralField> fields) {
  if (fields.empty()) return 1.0;
  const Grid2D& g = fields[0].grid();
  const int n = g.n();
  const double quarter = 0.25 * g.length();
  double inside = 0.0;
  double total = 0.0;
  for (const auto& f : fields) {
    const auto phys = f.to_physical_complex();
    for (int i = 0; i < n; ++i) {
      const double x1 = g.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const double x2 = g.coordinate(j);
        const double m = std::norm(phys[g.flat(i, j)]);
        total += m;
        if (x1 >= -quarter && x1 < quarter && x2 >= -quarter && x2 < quarter)
          inside += m;
      }
    }
  }
  return total == 0.0 ? 1.0 : inside / total;
}

const std::vector<std::string>& norm_report_columns() {
  static const std::vector<std::string> cols = {
      "time",      "l2",          "linf",        "w1inf",     "low_disp",
      "weighted",  "weighted_h4", "low_sob",     "mid_sob",   "mid_w14",
      "high_sob",  "top_sob",     "e_n",         "weighted_high",
      "band_low",  "band_mid",    "band_high",   "mass_fraction", "stale"};
  return cols;
}

std::vector<double> norm_report_row(const NormReport& r) {
  return {r.time,          r.l2,          r.linf,        r.w1inf,
          r.xt.low_disp,   r.xt.weighted, r.xt.weighted_h4, r.xt.low_sob,
          r.xt.mid_sob,    r.xt.mid_w14,  r.xt.high_sob, r.xt.top_sob,
          r.e_n,           r.weighted_high, r.band_low,  r.band_mid,
          r.band_high,     r.mass_fraction, r.stale ? 1.0 : 0.0};
}

XtComponents xt_components(const SymmetrizedState& u, double t,
                           const SimulationParams& params,
                           const CutoffFamily& cutoffs) {
  XtComponents out;
  const double sigma = params.sigma;
  const double delta = params.delta;
  const double n_top = params.n_reg;
  const double jt = japanese_t(t);
  const double eps = cutoffs.epsilon();

  const auto diag = diagonal_components(u, cutoffs);
  {
    std::vector<SpectralField> lifted;
    for (const auto& d : diag)
      lifted.push_back(map_modes(d, [sigma](double k1, double k2) -> Complex {
        return std::sqrt(symbols::abs_xi(k1, k2)) *
               symbols::bessel(k1, k2, 1.0 + sigma);
      }));
    out.low_disp = jt * lp_norm(u.a.grid(), physical_all(lifted),
                                std::numeric_limits<double>::infinity());
  }
  {
    const auto profile = map_modes(diag[0], [&](double k1, double k2) {
      return std::exp(Complex(0.0, t) * eval_linear_symbol(k1, k2, eps).b);
    });
    const auto weighted = times_position(std::span<const SpectralField>(&profile, 1));
    out.weighted = sobolev_norm(weighted, sigma + 4.0, 2.0 / (1.0 - delta));
    out.weighted_h4 = hs_norm(weighted, sigma + 4.0 + delta);
  }
  const SpectralField whole[] = {u.a, u.c};
  const auto low = filtered(whole, cutoffs, Band::low_total);
  const auto mid = filtered(whole, cutoffs, Band::mid);
  const auto high = filtered(whole, cutoffs, Band::high);
  out.low_sob = hs_norm(low, sigma + params.n_prime);
  out.mid_sob = std::pow(jt, 1.0 - 3.0 * delta) * hs_norm(mid, 2.0 * sigma + n_top - 1.0);
  out.mid_w14 = std::pow(jt, 1.5) * sobolev_norm(mid, 1.0, 4.0);
  out.high_sob = std::pow(jt, params.alpha_decay()) * hs_norm(high, 2.0 * sigma + n_top - 2.0);
  out.top_sob = std::pow(jt, -delta) * hs_norm(whole, 2.0 * sigma + n_top);
  return out;
}

double weighted_high_norm(const PrimitiveState& state,
                          const CutoffFamily& cutoffs) {
  const auto comps = primitive_components(state);
  const auto high = filtered(comps, cutoffs, Band::high);
  const Grid2D& g = state.grid();
  const int n = g.n();
  const double cell = g.dx() * g.dx();
  double acc = 0.0;
  for (const auto& f : high) {
    const auto phys = f.to_physical_complex();
    for (int i = 0; i < n; ++i) {
      const double x1 = g.coordinate(i);
      for (int j = 0; j < n; ++j) {
        const double x2 = g.coordinate(j);
        acc += (1.0 + x1 * x1 + x2 * x2) * std::norm(phys[g.flat(i, j)]);
      }
    }
  }
  return std::sqrt(acc * cell);
}

NormReport make_norm_report(const PrimitiveState& state) {
  const auto& p = state.params;
  const CutoffFamily cutoffs(p.epsilon, p.kappa0);
  const auto comps = primitive_components(state);
  const auto inf = std::numeric_limits<double>::infinity();
  NormReport r;
  r.time = state.time;
  r.l2 = hs_norm(comps, 0.0);
  r.linf = sobolev_norm(comps, 0.0, inf);
  r.w1inf = sobolev_norm(comps, 1.0, inf);
  r.xt = xt_components(to_symmetrized(state), state.time, p, cutoffs);
  r.e_n = energy_EN(state, p.n_reg);
  r.weighted_high = weighted_high_norm(state, cutoffs);
  r.band_low = hs_norm(filtered(comps, cutoffs, Band::low), 0.0);
  r.band_mid = hs_norm(filtered(comps, cutoffs, Band::mid), 0.0);
  r.band_high = hs_norm(filtered(comps, cutoffs, Band::high), 0.0);
  r.mass_fraction = mass_fraction(comps);
  r.stale = r.mass_fraction < kMassContainment;
  return r;
}

double y_norm(const PrimitiveState& initial, int sigma,
              const CutoffFamily& cutoffs) {
  const auto comps = primitive_components(initial);
  const auto low = filtered(comps, cutoffs, Band::low_total);
  const auto high = filtered(comps, cutoffs, Band::high);
  const double delta = initial.params.delta;

  const double piece1 = sobolev_norm(low, sigma + 4.0, 1.0);
  const double piece2 = hs_norm(times_position(low), sigma + 4.0 + delta);
  const double piece3 = hs_norm(times_position(high), 0.0);
  const double piece4 = hs_norm(comps, 11.0 + 2.0 * sigma);
  return piece1 + piece2 + piece3 + piece4;
}

double besov_square_sum(const SpectralField& f, double s) {
  const Grid2D& g = f.grid();
  const double kmax = std::sqrt(2.0) * 0.5 * g.n() * g.dk();
  double total = 0.0;
  for (int j = 0; std::ldexp(0.75, j) <= kmax; ++j) {
    const auto block = map_modes(f, [j](double k1, double k2) -> Complex {
      return CutoffFamily::dyadic(j, k1, k2);
    });
    const double norm = block.l2_norm();
    total += std::pow(2.0, 2.0 * j * s) * norm * norm;
  }
  return total;
}

CompactProfile default_commutator_profile() {
  return {[](double x1, double x2) {
            const double r2 = (x1 - 0.5) * (x1 - 0.5) + x2 * x2;
            if (r2 >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - r2));
          },
          1.5};
}

double commutator_probe(double r,
                        const std::function<Complex(double, double)>& theta,
                        const CompactProfile& zeta, const SpectralField& f) {
  const Grid2D& g = f.grid();
  if (!(r > 0.0)) throw std::invalid_argument("commutator_probe: R must be positive");
  if (r * zeta.extent >= 0.5 * g.length())
    throw std::invalid_argument(
        "commutator_probe: zeta_R leaves the box (R * extent >= L/2)");
  const int n = g.n();
  std::vector<double> z(g.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      z[g.flat(i, j)] = zeta.value(g.coordinate(i) / r, g.coordinate(j) / r);

  auto times_zeta = [&](const SpectralField& h) {
    auto phys = h.to_physical_complex();
    for (std::size_t p = 0; p < phys.size(); ++p) phys[p] *= z[p];
    return SpectralField::from_physical(g, std::span<const Complex>(phys));
  };
  const auto lhs = times_zeta(apply_multiplier(f, theta));
  const auto rhs = apply_multiplier(times_zeta(f), theta);
  return (lhs - rhs).l2_norm();
}

}  // namespace nsp2d
