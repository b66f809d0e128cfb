#include "nsp2d/linear_symbol.hpp"

#include <algorithm>
#include <cmath>

namespace nsp2d {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

Mat2 operator-(const Mat2& a, const Mat2& b) {
  return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

Mat2 operator*(Complex s, const Mat2& a) {
  return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

Mat2 Mat2::inverse() const {
  const Complex d = det();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

double Mat2::norm() const {
  return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) +
                   std::norm(a22));
}

double Mat2::spectral_norm() const {
  // sigma_max^2 = (F^2 + sqrt(F^4 - 4|det|^2)) / 2
  const double f2 = std::norm(a11) + std::norm(a12) + std::norm(a21) +
                    std::norm(a22);
  const double d2 = std::norm(det());
  const double disc = std::max(0.0, f2 * f2 - 4.0 * d2);
  return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
}

Complex complex_expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  // Re: e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

namespace {

// (e^z - 1) / z
Complex phi1(Complex z) {
  if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
  return complex_expm1(z) / z;
}

}  // namespace

LinearSymbol eval_linear_symbol(double k1, double k2, double epsilon) {
  LinearSymbol s;
  s.k1 = k1;
  s.k2 = k2;
  s.epsilon = epsilon;
  s.k_sq = k1 * k1 + k2 * k2;
  s.bracket = std::sqrt(1.0 + s.k_sq);
  const double damping = epsilon * s.k_sq;
  const double radicand = 1.0 + s.k_sq - damping * damping;
  if (radicand >= 0.0) {
    s.b = {std::sqrt(radicand), 0.0};
  } else {
    s.b = {0.0, std::sqrt(-radicand)};
  }
  const Complex ib = Complex(0.0, 1.0) * s.b;
  s.lambda_plus = -damping + ib;
  s.lambda_minus = -damping - ib;
  s.a_hat = {0.0, s.bracket, -s.bracket, 2.0 * damping};
  if (s.b != Complex(0.0, 0.0)) {
    s.q = {1.0, 1.0, -s.lambda_minus / s.bracket, -s.lambda_plus / s.bracket};
    const Complex inv_2ib = 1.0 / (2.0 * ib);
    s.q_inv = {inv_2ib * s.lambda_plus, inv_2ib * s.bracket,
               -inv_2ib * s.lambda_minus, -inv_2ib * s.bracket};
  }
  return s;
}

GreenEntries green_entries(double t, const LinearSymbol& sym) {
  const Complex lp = sym.lambda_plus;
  const Complex lm = sym.lambda_minus;
  const Complex diff = lp - lm;
  if (std::abs(diff) < kConfluentThreshold) {
    const Complex mean = 0.5 * (lp + lm);
    const Complex e = std::exp(mean * t);
    return {e * (1.0 - mean * t), sym.bracket * t * e, e * (1.0 + mean * t)};
  }
  // E = (e^{l+ t} - e^{l- t}) / (l+ - l-), factored around the slower
  // eigenvalue so neither exponential overflows nor cancels.
  const bool plus_is_fast = lp.real() < lm.real();
  const Complex fast = plus_is_fast ? lp : lm;
  const Complex slow = plus_is_fast ? lm : lp;
  const Complex delta = slow - fast;
  const Complex e_slow = std::exp(slow * t);
  const Complex e_fast = std::exp(fast * t);
  const Complex divided = e_slow * t * phi1(-delta * t);
  // G1 = e^{f t} - f E and G3 = e^{f t} + s E avoid cancellation for stiff modes.
  const Complex g1 = e_fast - fast * divided;
  const Complex g3 = e_fast + slow * divided;
  return {g1, sym.bracket * divided, g3};
}

Mat2 green_matrix(double t, const LinearSymbol& sym) {
  const auto g = green_entries(t, sym);
  return {g.g1, -g.g2, g.g2, g.g3};
}

Mat2 expm_reference(const Mat2& m) {
  using LC = std::complex<long double>;
  LC a[2][2] = {{LC(m.a11), LC(m.a12)}, {LC(m.a21), LC(m.a22)}};
  long double norm = 0.0L;
  for (auto& row : a)
    for (auto& v : row) norm += std::norm(v);
  norm = std::sqrt(norm);
  int squarings = 0;
  while (norm > 0.125L) {
    norm *= 0.5L;
    ++squarings;
  }
  const long double scale = std::ldexp(1.0L, -squarings);
  for (auto& row : a)
    for (auto& v : row) v *= scale;
  LC sum[2][2] = {{1.0L, 0.0L}, {0.0L, 1.0L}};
  LC term[2][2] = {{1.0L, 0.0L}, {0.0L, 1.0L}};
  for (int k = 1; k <= 30; ++k) {
    LC next[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        next[i][j] = (term[i][0] * a[0][j] + term[i][1] * a[1][j]) / static_cast<long double>(k);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        term[i][j] = next[i][j];
        sum[i][j] += next[i][j];
      }
  }
  for (int s = 0; s < squarings; ++s) {
    LC sq[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sq[i][j] = sum[i][0] * sum[0][j] + sum[i][1] * sum[1][j];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum[i][j] = sq[i][j];
  }
  auto c = [](LC v) { return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())); };
  return {c(sum[0][0]), c(sum[0][1]), c(sum[1][0]), c(sum[1][1])};
}

double relative_distance(const Mat2& a, const Mat2& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace nsp2d
