#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nsp2d/grid.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/rng.hpp"
#include "nsp2d/spectral_field.hpp"

namespace fixtures {

using nsp2d::Complex;
using nsp2d::Grid2D;
using nsp2d::SpectralField;

inline constexpr double kPi = 3.14159265358979323846;

inline std::vector<double> samples(const Grid2D& g, auto&& f) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j)
      v[g.flat(i, j)] = f(g.coordinate(i), g.coordinate(j));
  return v;
}

inline SpectralField from_function(const Grid2D& g, auto&& f) {
  const auto v = samples(g, f);
  return SpectralField::from_physical(g, std::span<const double>(v));
}

/// Real field with independent uniform samples in [-1, 1].
inline SpectralField random_real(const Grid2D& g, std::uint64_t seed) {
  nsp2d::CounterRng rng(seed, 99);
  std::vector<double> v(g.size());
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return SpectralField::from_physical(g, std::span<const double>(v));
}

/// Real field whose coefficients vanish outside |m1|, |m2| <= max_mode.
inline SpectralField random_band_limited(const Grid2D& g, int max_mode,
                                         std::uint64_t seed) {
  nsp2d::CounterRng rng(seed, 98);
  SpectralField f(g);
  const int n = g.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int m1 = g.signed_mode(i), m2 = g.signed_mode(j);
      if (std::abs(m1) > max_mode || std::abs(m2) > max_mode) continue;
      if (g.is_nyquist(i) || g.is_nyquist(j)) continue;
      f(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
  // Hermitian symmetrization so the physical field is real.
  SpectralField out(g);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int ni = (n - i) % n, nj = (n - j) % n;
      out(i, j) = 0.5 * (f(i, j) + std::conj(f(ni, nj)));
    }
  return out;
}

inline SpectralField gaussian(const Grid2D& g, double width, double c1 = 0.0,
                              double c2 = 0.0) {
  return from_function(g, [&](double x, double y) {
    const double r2 = (x - c1) * (x - c1) + (y - c2) * (y - c2);
    return std::exp(-r2 / (2.0 * width * width));
  });
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double max_coeff(const SpectralField& f) {
  double m = 0.0;
  for (auto c : f.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace fixtures
