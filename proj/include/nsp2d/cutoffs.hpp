#pragma once

#include "nsp2d/spectral_field.hpp"

namespace nsp2d {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);

/// Radial profiles of the three-band partition and the dyadic family.
namespace profile {
/// 1 on |x| <= 1/2, 0 on |x| >= 1.
double chi1(double r);
/// 1 - chi1 - chi3, supported in [1/2, 3].
double chi2(double r);
/// 0 on |x| <= 5/2, 1 on |x| >= 3.
double chi3(double r);
/// 1 on B_{3/2}, 0 outside B_{5/3}.
double psi(double r);
/// psi(r) - psi(2r), supported in [3/4, 5/3].
double phi(double r);
}  // namespace profile

/// The epsilon-scaled cutoffs chi^l, chi^m, chi^h evaluated at
/// sqrt(epsilon/kappa0) * xi, plus the Littlewood-Paley blocks.
class CutoffFamily {
 public:
  explicit CutoffFamily(double epsilon, double kappa0 = 1.0 / 200.0);

  double epsilon() const { return epsilon_; }
  double kappa0() const { return kappa0_; }
  double scale() const { return scale_; }
  double scaled_radius(double k1, double k2) const;

  double low(double k1, double k2) const;   // chi^l
  double mid(double k1, double k2) const;   // chi^m
  double high(double k1, double k2) const;  // chi^h
  double low_total(double k1, double k2) const { return 1.0 - high(k1, k2); }
  double high_total(double k1, double k2) const { return 1.0 - low(k1, k2); }

  /// Psi(xi) for j = 0 and Phi_j(xi) = Phi(xi / 2^j) for j >= 1.
  static double dyadic(int j, double k1, double k2);

 private:
  double epsilon_;
  double kappa0_;
  double scale_;
};

struct BandSplit {
  SpectralField low;
  SpectralField mid;
  SpectralField high;
};

BandSplit band_split(const SpectralField& field, const CutoffFamily& cutoffs);

enum class Band { low, mid, high, low_total, high_total };
SpectralField band_filter(const SpectralField& field, const CutoffFamily& cutoffs,
                          Band band);
double band_value(const CutoffFamily& cutoffs, Band band, double k1, double k2);

}  // namespace nsp2d
