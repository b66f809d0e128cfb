#include "nsp2d/cutoffs.hpp"

#include <cmath>
#include <stdexcept>

#include "nsp2d/multipliers.hpp"

namespace nsp2d {

namespace {

double mollifier(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = mollifier(t);
  return a / (a + mollifier(1.0 - t));
}

namespace profile {

double chi1(double r) { return 1.0 - smooth_step((r - 0.5) / 0.5); }
double chi3(double r) { return smooth_step((r - 2.5) / 0.5); }
double chi2(double r) { return 1.0 - chi1(r) - chi3(r); }
double psi(double r) { return 1.0 - smooth_step((r - 1.5) / (5.0 / 3.0 - 1.5)); }
double phi(double r) { return psi(r) - psi(2.0 * r); }

}  // namespace profile

CutoffFamily::CutoffFamily(double epsilon, double kappa0)
    : epsilon_(epsilon), kappa0_(kappa0) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("cutoffs: epsilon must lie in (0,1]");
  if (!(kappa0 > 0.0))
    throw std::invalid_argument("cutoffs: kappa0 must be positive");
  scale_ = std::sqrt(epsilon / kappa0);
}

double CutoffFamily::scaled_radius(double k1, double k2) const {
  return scale_ * std::hypot(k1, k2);
}

double CutoffFamily::low(double k1, double k2) const {
  return profile::chi1(scaled_radius(k1, k2));
}

double CutoffFamily::mid(double k1, double k2) const {
  return profile::chi2(scaled_radius(k1, k2));
}

double CutoffFamily::high(double k1, double k2) const {
  return profile::chi3(scaled_radius(k1, k2));
}

double CutoffFamily::dyadic(int j, double k1, double k2) {
  const double r = std::hypot(k1, k2);
  if (j == 0) return profile::psi(r);
  return profile::phi(std::ldexp(r, -j));
}

double band_value(const CutoffFamily& cutoffs, Band band, double k1,
                  double k2) {
  switch (band) {
    case Band::low:
      return cutoffs.low(k1, k2);
    case Band::mid:
      return cutoffs.mid(k1, k2);
    case Band::high:
      return cutoffs.high(k1, k2);
    case Band::low_total:
      return cutoffs.low_total(k1, k2);
    case Band::high_total:
      return cutoffs.high_total(k1, k2);
  }
  return 0.0;
}

SpectralField band_filter(const SpectralField& field,
                          const CutoffFamily& cutoffs, Band band) {
  return map_modes(field, [&](double k1, double k2) -> Complex {
    return band_value(cutoffs, band, k1, k2);
  });
}

BandSplit band_split(const SpectralField& field, const CutoffFamily& cutoffs) {
  auto low = band_filter(field, cutoffs, Band::low);
  auto high = band_filter(field, cutoffs, Band::high);
  auto mid = field - low - high;
  return {std::move(low), std::move(mid), std::move(high)};
}

}  // namespace nsp2d
