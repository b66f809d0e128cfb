#include "nsp2d/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nsp2d/parallel.hpp"

namespace nsp2d {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlan> shared_plan(int n) {
  static std::mutex cache_mutex;
  static std::map<int, std::weak_ptr<const FftPlan>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto existing = cache[n].lock()) return existing;
  auto plan = std::make_shared<const FftPlan>(n);
  cache[n] = plan;
  return plan;
}

}  // namespace

Grid2D::Grid2D(int n_points_per_axis, double box_length,
               double dealias_fraction) {
  if (n_points_per_axis < 4 || n_points_per_axis % 2 != 0)
    throw std::invalid_argument("grid: N must be an even integer >= 4, got " +
                                std::to_string(n_points_per_axis));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("grid: box length must be positive");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw std::invalid_argument("grid: dealias fraction must lie in (0,1]");

  auto impl = std::make_shared<Impl>();
  const int n = n_points_per_axis;
  impl->n = n;
  impl->length = box_length;
  impl->dealias_fraction = dealias_fraction;
  impl->dk = 2.0 * std::numbers::pi / box_length;
  // Largest integer strictly below fraction*N/2; the Nyquist mode is never kept.
  const double edge = dealias_fraction * n / 2.0;
  impl->cutoff = static_cast<int>(std::ceil(edge - 1e-9)) - 1;
  impl->modes.resize(n);
  impl->wavenumbers.resize(n);
  impl->keep.resize(n);
  for (int i = 0; i < n; ++i) {
    const int m = i < n / 2 ? i : i - n;
    impl->modes[i] = m;
    impl->wavenumbers[i] = impl->dk * m;
    impl->keep[i] = (i != n / 2) && std::abs(m) <= impl->cutoff;
  }
  impl->plan = shared_plan(n);
  impl_ = std::move(impl);
}

const FftPlan& Grid2D::plan() const { return *impl_->plan; }

bool Grid2D::operator==(const Grid2D& other) const {
  if (impl_ == other.impl_) return true;
  return impl_->n == other.impl_->n && impl_->length == other.impl_->length &&
         impl_->dealias_fraction == other.impl_->dealias_fraction;
}

FftPlan::FftPlan(int n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto* buf = fftw_alloc_complex(static_cast<std::size_t>(n) * n);
  // FFTW_ESTIMATE keeps plan selection (and therefore every output bit)
  // independent of timing measurements.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
  if (!forward_plan_ || !backward_plan_)
    throw std::runtime_error("fft: plan creation failed");
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FftPlan::forward(const std::complex<double>* in,
                      std::complex<double>* out) const {
  const std::size_t total = static_cast<std::size_t>(n_) * n_;
  if (in != out) std::copy(in, in + total, out);
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_),
                   reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));
  // exp(i k x) with x = -L/2 + pL/N carries the factor (-1)^m per axis.
  const double scale = 1.0 / static_cast<double>(total);
  const int n = n_;
  parallel_rows(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const double sign = ((i + j) & 1) ? -scale : scale;
      out[static_cast<std::size_t>(i) * n + j] *= sign;
    }
  });
}

void FftPlan::backward(const std::complex<double>* in,
                       std::complex<double>* out) const {
  const int n = n_;
  parallel_rows(n, [&](int i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + j;
      out[idx] = ((i + j) & 1) ? -in[idx] : in[idx];
    }
  });
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_),
                   reinterpret_cast<fftw_complex*>(out),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace nsp2d
