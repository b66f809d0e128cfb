#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <complex>
#include <vector>

#include "nsp2d/linear_symbol.hpp"

namespace oracles {

using Complex = std::complex<double>;

/// Eigen's Pade scaling-and-squaring exponential of -t A-hat(xi), built
/// from the definition of A-hat rather than from the library symbol.
inline nsp2d::Mat2 green_oracle(double t, double k1, double k2, double eps) {
  const double k_sq = k1 * k1 + k2 * k2;
  const double bracket = std::sqrt(1.0 + k_sq);
  Eigen::Matrix2cd a;
  a << 0.0, bracket, -bracket, 2.0 * eps * k_sq;
  const Eigen::Matrix2cd e = (-t * a).exp();
  return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)};
}

/// Classical RK4 for U' = -A-hat U with a fixed number of steps.
inline std::array<Complex, 2> rk4_oracle(double t, double k1, double k2,
                                         double eps, std::array<Complex, 2> u,
                                         int steps) {
  const double k_sq = k1 * k1 + k2 * k2;
  const double br = std::sqrt(1.0 + k_sq);
  const double d = 2.0 * eps * k_sq;
  auto f = [&](const std::array<Complex, 2>& v) -> std::array<Complex, 2> {
    return {-br * v[1], br * v[0] - d * v[1]};
  };
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const auto k1v = f(u);
    const auto k2v = f({u[0] + 0.5 * h * k1v[0], u[1] + 0.5 * h * k1v[1]});
    const auto k3v = f({u[0] + 0.5 * h * k2v[0], u[1] + 0.5 * h * k2v[1]});
    const auto k4v = f({u[0] + h * k3v[0], u[1] + h * k3v[1]});
    for (int i = 0; i < 2; ++i)
      u[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
  }
  return u;
}


/// O(N^4) forward transform with the 1/N^2 normalization, independent of FFTW.
inline std::vector<Complex> naive_forward(const std::vector<Complex>& x, int n) {
  std::vector<Complex> out(x.size());
  const double tau = 2.0 * 3.14159265358979323846 / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex acc = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          acc += x[i * n + j] * std::polar(1.0, -tau * (a * i + b * j));
      out[a * n + b] = acc / double(n * n);
    }
  return out;
}

inline std::vector<Complex> naive_backward(const std::vector<Complex>& c, int n) {
  std::vector<Complex> out(c.size());
  const double tau = 2.0 * 3.14159265358979323846 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          acc += c[a * n + b] * std::polar(1.0, tau * (a * i + b * j));
      out[i * n + j] = acc;
    }
  return out;
}

}  // namespace oracles
