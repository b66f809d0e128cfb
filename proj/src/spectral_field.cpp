#include "nsp2d/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsp2d/parallel.hpp"

namespace nsp2d {

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (a != b) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

SpectralField::SpectralField(Grid2D grid)
    : grid_(std::move(grid)), coeffs_(grid_.size(), Complex{}) {}

SpectralField::SpectralField(Grid2D grid, std::vector<Complex> coefficients)
    : grid_(std::move(grid)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != grid_.size())
    throw std::invalid_argument("coefficient array does not match grid size");
}

SpectralField SpectralField::from_physical(const Grid2D& grid,
                                           std::span<const double> samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("sample array does not match grid size");
  std::vector<Complex> buf(samples.begin(), samples.end());
  grid.plan().forward(buf.data(), buf.data());
  return SpectralField(grid, std::move(buf));
}

SpectralField SpectralField::from_physical(const Grid2D& grid,
                                           std::span<const Complex> samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("sample array does not match grid size");
  std::vector<Complex> buf(samples.begin(), samples.end());
  grid.plan().forward(buf.data(), buf.data());
  return SpectralField(grid, std::move(buf));
}

std::vector<Complex> SpectralField::to_physical_complex() const {
  std::vector<Complex> buf(coeffs_.size());
  grid_.plan().backward(coeffs_.data(), buf.data());
  return buf;
}

std::vector<double> SpectralField::to_physical() const {
  const auto buf = to_physical_complex();
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

double SpectralField::l2_norm() const {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return grid_.length() * std::sqrt(sum);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::add_scaled(const SpectralField& other,
                                         Complex scale) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] += scale * other.coeffs_[i];
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) {
  a += b;
  return a;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}

SpectralField operator*(Complex s, SpectralField a) {
  a *= s;
  return a;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a[0] + b[0], a[1] + b[1]};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a[0] - b[0], a[1] - b[1]};
}

VectorField operator*(Complex s, const VectorField& a) {
  return {s * a[0], s * a[1]};
}

double l2_norm(const VectorField& v) {
  return std::hypot(v[0].l2_norm(), v[1].l2_norm());
}

VectorField zero_vector(const Grid2D& grid) {
  return {SpectralField(grid), SpectralField(grid)};
}

double relative_difference(const SpectralField& value,
                           const SpectralField& reference) {
  require_same_grid(value.grid(), reference.grid());
  double diff = 0.0;
  double scale = 0.0;
  const auto v = value.coefficients();
  const auto r = reference.coefficients();
  for (std::size_t i = 0; i < v.size(); ++i) {
    diff = std::max(diff, std::abs(v[i] - r[i]));
    scale = std::max(scale, std::abs(r[i]));
  }
  if (scale == 0.0) return diff;
  return diff / scale;
}

}  // namespace nsp2d
