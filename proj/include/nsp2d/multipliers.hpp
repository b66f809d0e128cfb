#pragma once

#include <cmath>
#include <functional>

#include "nsp2d/parallel.hpp"
#include "nsp2d/spectral_field.hpp"

namespace nsp2d {

/// Fourier symbol as a function of the frequency components (xi1, xi2).
using Symbol = std::function<Complex(double, double)>;

/// Multiplies each coefficient by symbol(k). Throws std::domain_error naming
/// the first lattice mode where the symbol is not finite.
SpectralField apply_multiplier(const SpectralField& field, const Symbol& symbol);

/// Unchecked variant for inner loops.
template <class F>
SpectralField map_modes(const SpectralField& field, F&& symbol) {
  SpectralField out(field.grid());
  const Grid2D& g = field.grid();
  const int n = g.n();
  const auto in = field.coefficients();
  auto dst = out.coefficients();
  parallel_rows(n, [&](int i) {
    const double k1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = g.flat(i, j);
      dst[idx] = symbol(k1, g.wavenumber(j)) * in[idx];
    }
  });
  return out;
}

namespace symbols {

inline double abs_xi(double k1, double k2) { return std::hypot(k1, k2); }
/// Japanese bracket <xi> = sqrt(1 + |xi|^2).
inline double bracket(double k1, double k2) {
  return std::sqrt(1.0 + k1 * k1 + k2 * k2);
}
/// Bessel potential symbol <xi>^s.
inline double bessel(double k1, double k2, double s) {
  return std::pow(1.0 + k1 * k1 + k2 * k2, 0.5 * s);
}
/// Symbol of d/dx_axis.
inline Complex derivative(double k1, double k2, int axis) {
  return {0.0, axis == 0 ? k1 : k2};
}
/// Riesz transform nabla/|nabla| component; zero at the origin.
inline Complex riesz(double k1, double k2, int axis) {
  const double r = std::hypot(k1, k2);
  if (r == 0.0) return {};
  return {0.0, (axis == 0 ? k1 : k2) / r};
}

}  // namespace symbols

SpectralField partial(const SpectralField& f, int axis);
VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
/// Scalar curl d1 v2 - d2 v1.
SpectralField curl(const VectorField& v);
SpectralField laplacian(const SpectralField& f);
/// Bessel potential <nabla>^s.
SpectralField bessel(const SpectralField& f, double s);
/// Riesz vector nabla/|nabla| applied to a scalar.
VectorField riesz(const SpectralField& f);
/// div/|nabla| applied to a vector field.
SpectralField riesz_divergence(const VectorField& v);

/// Solves Laplacian(phi) = rho with phi's zero mode set to 0.
SpectralField poisson_solve(const SpectralField& rho);

struct LeraySplit {
  VectorField rotational;  // divergence free
  VectorField potential;   // curl free, carries the zero mode
};

/// u = rotational + potential with P = Id - grad Lap^{-1} div.
LeraySplit leray_split(const VectorField& u);

/// Zeroes every mode outside the dealiasing mask, including Nyquist.
SpectralField dealias(SpectralField f);
void dealias_in_place(SpectralField& f);

/// Dealiased spectral coefficients of a pointwise product.
SpectralField product(const SpectralField& f, const SpectralField& g);

/// Forward transform of physical samples followed by the dealiasing mask.
SpectralField from_physical_dealiased(const Grid2D& grid,
                                      std::span<const Complex> samples);

}  // namespace nsp2d
