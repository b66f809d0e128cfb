#include "nsp2d/multipliers.hpp"

#include <sstream>
#include <stdexcept>

namespace nsp2d {

SpectralField apply_multiplier(const SpectralField& field,
                               const Symbol& symbol) {
  const Grid2D& g = field.grid();
  const int n = g.n();
  SpectralField out(g);
  const auto in = field.coefficients();
  auto dst = out.coefficients();
  for (int i = 0; i < n; ++i) {
    const double k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = g.wavenumber(j);
      const Complex s = symbol(k1, k2);
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        std::ostringstream msg;
        msg << "multiplier is not finite at mode (" << g.signed_mode(i) << ", "
            << g.signed_mode(j) << "), xi = (" << k1 << ", " << k2 << ")";
        throw std::domain_error(msg.str());
      }
      const std::size_t idx = g.flat(i, j);
      dst[idx] = s * in[idx];
    }
  }
  return out;
}

SpectralField partial(const SpectralField& f, int axis) {
  return map_modes(f, [axis](double k1, double k2) {
    return symbols::derivative(k1, k2, axis);
  });
}

VectorField gradient(const SpectralField& f) {
  return {partial(f, 0), partial(f, 1)};
}

SpectralField divergence(const VectorField& v) {
  return partial(v[0], 0) + partial(v[1], 1);
}

SpectralField curl(const VectorField& v) {
  return partial(v[1], 0) - partial(v[0], 1);
}

SpectralField laplacian(const SpectralField& f) {
  return map_modes(f, [](double k1, double k2) -> Complex {
    return -(k1 * k1 + k2 * k2);
  });
}

SpectralField bessel(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  return map_modes(f, [s](double k1, double k2) -> Complex {
    return symbols::bessel(k1, k2, s);
  });
}

VectorField riesz(const SpectralField& f) {
  return {map_modes(f, [](double k1, double k2) {
            return symbols::riesz(k1, k2, 0);
          }),
          map_modes(f, [](double k1, double k2) {
            return symbols::riesz(k1, k2, 1);
          })};
}

SpectralField riesz_divergence(const VectorField& v) {
  return map_modes(v[0], [](double k1, double k2) {
           return symbols::riesz(k1, k2, 0);
         }) +
         map_modes(v[1], [](double k1, double k2) {
           return symbols::riesz(k1, k2, 1);
         });
}

SpectralField poisson_solve(const SpectralField& rho) {
  return map_modes(rho, [](double k1, double k2) -> Complex {
    const double k2sum = k1 * k1 + k2 * k2;
    if (k2sum == 0.0) return 0.0;
    return -1.0 / k2sum;
  });
}

LeraySplit leray_split(const VectorField& u) {
  const Grid2D& g = u[0].grid();
  const int n = g.n();
  LeraySplit out{zero_vector(g), zero_vector(g)};
  const auto u1 = u[0].coefficients();
  const auto u2 = u[1].coefficients();
  auto r1 = out.rotational[0].coefficients();
  auto r2 = out.rotational[1].coefficients();
  auto p1 = out.potential[0].coefficients();
  auto p2 = out.potential[1].coefficients();
  parallel_rows(n, [&](int i) {
    const double k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double k2 = g.wavenumber(j);
      const std::size_t idx = g.flat(i, j);
      const double ksq = k1 * k1 + k2 * k2;
      if (ksq == 0.0) {
        p1[idx] = u1[idx];
        p2[idx] = u2[idx];
        continue;
      }
      // Potential part: xi (xi . u) / |xi|^2.
      const Complex dot = (k1 * u1[idx] + k2 * u2[idx]) / ksq;
      p1[idx] = k1 * dot;
      p2[idx] = k2 * dot;
      r1[idx] = u1[idx] - p1[idx];
      r2[idx] = u2[idx] - p2[idx];
    }
  });
  return out;
}

void dealias_in_place(SpectralField& f) {
  const Grid2D& g = f.grid();
  const int n = g.n();
  auto c = f.coefficients();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!g.retained(i, j)) c[g.flat(i, j)] = 0.0;
}

SpectralField dealias(SpectralField f) {
  dealias_in_place(f);
  return f;
}

SpectralField from_physical_dealiased(const Grid2D& grid,
                                      std::span<const Complex> samples) {
  auto out = SpectralField::from_physical(grid, samples);
  dealias_in_place(out);
  return out;
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  if (f.grid() != g.grid())
    throw std::invalid_argument("product: fields live on different grids");
  auto a = f.to_physical_complex();
  const auto b = g.to_physical_complex();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return from_physical_dealiased(f.grid(), a);
}

}  // namespace nsp2d
