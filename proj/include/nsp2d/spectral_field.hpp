#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "nsp2d/grid.hpp"

namespace nsp2d {

using Complex = std::complex<double>;

/// Fourier coefficients of a scalar field, f(x) = sum_k fhat(k) e^{ik.x}.
///
/// With this convention the coefficients of a pointwise product fg are the
/// discrete convolution sum_eta fhat(xi - eta) ghat(eta).
class SpectralField {
 public:
  explicit SpectralField(Grid2D grid);
  SpectralField(Grid2D grid, std::vector<Complex> coefficients);

  static SpectralField from_physical(const Grid2D& grid,
                                     std::span<const double> samples);
  static SpectralField from_physical(const Grid2D& grid,
                                     std::span<const Complex> samples);

  const Grid2D& grid() const { return grid_; }
  std::span<const Complex> coefficients() const { return coeffs_; }
  std::span<Complex> coefficients() { return coeffs_; }

  Complex& operator()(int i, int j) { return coeffs_[grid_.flat(i, j)]; }
  const Complex& operator()(int i, int j) const {
    return coeffs_[grid_.flat(i, j)];
  }

  /// Real part of the physical samples.
  std::vector<double> to_physical() const;
  std::vector<Complex> to_physical_complex() const;

  /// Physical L^2 norm over the box, via Parseval: L * sqrt(sum |fhat|^2).
  double l2_norm() const;
  /// Box average (the zero mode).
  Complex mean() const { return coeffs_[0]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);
  /// out = this + scale * other
  SpectralField& add_scaled(const SpectralField& other, Complex scale);

 private:
  Grid2D grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex s, SpectralField a);

using VectorField = std::array<SpectralField, 2>;

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(Complex s, const VectorField& a);
double l2_norm(const VectorField& v);
VectorField zero_vector(const Grid2D& grid);

/// Largest |coefficient| difference relative to the largest |coefficient|
/// of `reference`; 0 when both vanish.
double relative_difference(const SpectralField& value,
                           const SpectralField& reference);

}  // namespace nsp2d
