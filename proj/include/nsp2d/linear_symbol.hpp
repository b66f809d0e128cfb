#pragma once

#include <complex>

namespace nsp2d {

using Complex = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2 {
  Complex a11{}, a12{}, a21{}, a22{};

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

  Complex det() const { return a11 * a22 - a12 * a21; }
  Mat2 inverse() const;
  /// Frobenius norm.
  double norm() const;
  /// Largest singular value.
  double spectral_norm() const;
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, const Mat2& a);

/// Per-mode linear theory of the symmetrized system.
struct LinearSymbol {
  double k1 = 0.0;
  double k2 = 0.0;
  double epsilon = 0.0;
  double k_sq = 0.0;       // |xi|^2
  double bracket = 1.0;    // <xi>
  Complex b;               // sqrt(1 + |xi|^2 - eps^2 |xi|^4), branch below
  Complex lambda_plus;     // -eps|xi|^2 + i b
  Complex lambda_minus;    // -eps|xi|^2 - i b
  Mat2 a_hat;              // [[0, <xi>], [-<xi>, 2 eps |xi|^2]]
  Mat2 q;                  // eigenvector matrix, valid when b != 0
  Mat2 q_inv;
};

/// Evaluates b, lambda_pm, A-hat and the diagonalization at xi.
///
/// For a negative radicand r the square root is taken as b = i sqrt(-r), which
/// makes lambda_+ = -eps|xi|^2 - sqrt(-r) and keeps Re lambda_pm <= 0.
LinearSymbol eval_linear_symbol(double k1, double k2, double epsilon);

/// Modes with |lambda_+ - lambda_-| below this use the confluent limit.
inline constexpr double kConfluentThreshold = 1e-8;

/// exp(-t A-hat(xi)) = [[G1, -G2], [G2, G3]].
Mat2 green_matrix(double t, const LinearSymbol& sym);

struct GreenEntries {
  Complex g1, g2, g3;
};
GreenEntries green_entries(double t, const LinearSymbol& sym);

/// exp(z) - 1 accurate for small |z|.
Complex complex_expm1(Complex z);

/// Matrix exponential by scaling and squaring of a Taylor series in long
/// double. Slow; used for self-checks.
Mat2 expm_reference(const Mat2& m);

/// Relative Frobenius distance ||a - b|| / max(||b||, tiny).
double relative_distance(const Mat2& a, const Mat2& b);

}  // namespace nsp2d
