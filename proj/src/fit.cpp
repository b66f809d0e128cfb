#include "nsp2d/fit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nsp2d {

DecayFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("fit_line: need at least two paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.samples = n;
  return fit;
}

namespace {

std::vector<Sample> window(const std::vector<Sample>& series, double t_min,
                           double t_max) {
  std::vector<Sample> out;
  for (const auto& s : series)
    if (s.t >= t_min && s.t <= t_max) out.push_back(s);
  return out;
}

void require(const std::vector<Sample>& pts, double t_min, double t_max) {
  if (pts.size() < kMinFitSamples) {
    std::ostringstream msg;
    msg << "fit needs at least " << kMinFitSamples << " samples in ["
        << t_min << ", " << t_max << "], got " << pts.size();
    throw std::invalid_argument(msg.str());
  }
  for (const auto& s : pts)
    if (!(s.value > 0.0)) {
      std::ostringstream msg;
      msg << "fit needs positive values; got " << s.value << " at t = " << s.t;
      throw std::invalid_argument(msg.str());
    }
}

}  // namespace

DecayFit fit_decay(const std::vector<Sample>& series, double t_min,
                   double t_max) {
  const auto pts = window(series, t_min, t_max);
  require(pts, t_min, t_max);
  std::vector<double> x, y;
  for (const auto& s : pts) {
    x.push_back(std::log1p(s.t));
    y.push_back(std::log(s.value));
  }
  auto fit = fit_line(x, y);
  fit.t_min = t_min;
  fit.t_max = t_max;
  return fit;
}

DecayFit fit_exponential(const std::vector<Sample>& series, double t_min,
                         double t_max, double discard_fraction) {
  auto pts = window(series, t_min, t_max);
  const auto drop = static_cast<std::size_t>(std::floor(discard_fraction * pts.size()));
  pts.erase(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(drop));
  require(pts, t_min, t_max);
  std::vector<double> x, y;
  for (const auto& s : pts) {
    x.push_back(s.t);
    y.push_back(std::log(s.value));
  }
  auto fit = fit_line(x, y);
  fit.t_min = pts.front().t;
  fit.t_max = t_max;
  return fit;
}

}  // namespace nsp2d
