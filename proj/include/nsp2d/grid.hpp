#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace nsp2d {

class FftPlan;

/// Periodic box [-L/2, L/2)^2 sampled on an N x N lattice.
///
/// Storage index i along an axis corresponds to the signed mode
/// m = i for i < N/2 and m = i - N otherwise, so index N/2 is the Nyquist
/// mode (m = -N/2). Two-dimensional data is row-major with the first index
/// running along x1.
class Grid2D {
 public:
  Grid2D(int n_points_per_axis, double box_length,
         double dealias_fraction = 2.0 / 3.0);

  int n() const { return impl_->n; }
  double length() const { return impl_->length; }
  double dealias_fraction() const { return impl_->dealias_fraction; }
  double dx() const { return impl_->length / impl_->n; }
  /// Lattice spacing in frequency, 2*pi/L.
  double dk() const { return impl_->dk; }
  std::size_t size() const {
    return static_cast<std::size_t>(impl_->n) * impl_->n;
  }
  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(i) * impl_->n + j;
  }

  int signed_mode(int i) const { return impl_->modes[i]; }
  double wavenumber(int i) const { return impl_->wavenumbers[i]; }
  double coordinate(int i) const { return -0.5 * impl_->length + i * dx(); }
  bool is_nyquist(int i) const { return i == impl_->n / 2; }

  /// Largest |m| kept by the dealiasing mask.
  int dealias_cutoff() const { return impl_->cutoff; }
  bool retained(int i, int j) const {
    return impl_->keep[i] && impl_->keep[j];
  }

  /// Shared FFTW plan pair for this lattice size.
  const FftPlan& plan() const;

  bool operator==(const Grid2D& other) const;
  bool operator!=(const Grid2D& other) const { return !(*this == other); }

 private:
  struct Impl {
    int n;
    double length;
    double dealias_fraction;
    double dk;
    int cutoff;
    std::vector<int> modes;
    std::vector<double> wavenumbers;
    std::vector<char> keep;
    std::shared_ptr<const FftPlan> plan;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Forward/backward 2-D complex transforms with the coefficient convention
/// f(x) = sum_k fhat(k) exp(i k.x) on the centered box.
class FftPlan {
 public:
  explicit FftPlan(int n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  /// Physical samples -> coefficients (normalized by 1/N^2).
  void forward(const std::complex<double>* in, std::complex<double>* out) const;
  /// Coefficients -> physical samples.
  void backward(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  int n_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace nsp2d
