#pragma once

#include <utility>
#include <vector>

namespace nsp2d {

struct Sample {
  double t;
  double value;
};

struct DecayFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kMinFitSamples = 8;

/// Least squares of log(value) against log(1 + t) over samples with
/// t in [t_min, t_max]. Throws std::invalid_argument with fewer than
/// kMinFitSamples points or a non-positive value in the window.
DecayFit fit_decay(const std::vector<Sample>& series, double t_min,
                   double t_max);

/// Rate c of value ~ C exp(-c t): least squares of log(value) against t,
/// after dropping the leading `discard_fraction` of the windowed samples.
/// The exponent field holds -c.
DecayFit fit_exponential(const std::vector<Sample>& series, double t_min,
                         double t_max, double discard_fraction = 0.1);

/// Plain least squares y = slope x + intercept.
DecayFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nsp2d
