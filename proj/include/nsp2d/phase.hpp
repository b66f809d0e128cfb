#pragma once

#include <array>
#include <cstdint>
#include <functional>

#include "nsp2d/cutoffs.hpp"
#include "nsp2d/linear_symbol.hpp"
#include "nsp2d/spectral_field.hpp"

namespace nsp2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Vec2 a) { return dot(a, a); }

/// Which option of n_+ in {-lambda_-/<xi>, 1} (and n_- in
/// {-lambda_+/<xi>, 1}) the multiplier uses.
enum class NFactor { eigen, unit };

/// Phase and multiplier of the quadratic low-frequency interactions, written
/// in the variables (xi, eta) with output frequency xi + eta.
class PhaseSymbol {
 public:
  PhaseSymbol(double epsilon, double kappa0, int mu, int nu,
              NFactor factor = NFactor::eigen);

  double epsilon() const { return epsilon_; }
  int mu() const { return mu_; }
  int nu() const { return nu_; }
  const CutoffFamily& cutoffs() const { return cutoffs_; }

  /// Real dispersion b; on the low band the radicand is positive.
  double b(Vec2 xi) const;
  /// eps (|xi + eta|^2 - |xi|^2 - |eta|^2)
  double z(Vec2 xi, Vec2 eta) const;
  /// i (b(xi + eta) - mu b(xi) - nu b(eta)) + Z(xi, eta)
  Complex phase(Vec2 xi, Vec2 eta) const;
  Complex n_factor(int sign, Vec2 xi) const;
  /// <xi + eta> chi^L(xi) chi^L(eta) chi^L(xi + eta) n_mu(xi) n_nu(eta).
  /// With with_cutoffs = false the three cutoff factors are dropped.
  Complex multiplier(Vec2 xi, Vec2 eta, bool with_cutoffs = true) const;
  Complex ratio(Vec2 xi, Vec2 eta, bool with_cutoffs = true) const {
    return multiplier(xi, eta, with_cutoffs) / phase(xi, eta);
  }

  /// chi^L(xi) chi^L(eta) chi^L(xi + eta) > 0.
  bool admissible(Vec2 xi, Vec2 eta) const;
  /// Radius of the support of chi^L.
  double low_radius() const;

 private:
  double epsilon_;
  CutoffFamily cutoffs_;
  int mu_;
  int nu_;
  NFactor factor_;
};

/// (b(xi) + b(eta))^2 - b(xi + eta)^2 expanded:
/// 1 + 2 b(xi) b(eta) - 2 xi.eta - eps^2 (|xi|^4 + |eta|^4 - |xi + eta|^4).
double quantity_A(Vec2 xi, Vec2 eta, double epsilon);

inline constexpr int kMaxSweepOrder = 4;

struct SweepReport {
  double epsilon = 0.0;
  int mu = 1;
  int nu = 1;
  double min_A = 0.0;
  double min_abs_phi = 0.0;
  /// Indexed by |alpha| + |beta| = 0..4, with |alpha|, |beta| <= 2.
  std::array<double, kMaxSweepOrder + 1> max_ratio_by_order{};
  std::size_t samples = 0;
  std::size_t skipped = 0;
};

struct SweepOptions {
  double kappa0 = 1.0 / 200.0;
  std::uint64_t seed = 7;
  bool with_cutoffs = true;
  /// Central-difference steps for derivative orders <= 2 and for 3..4.
  double step_low = 1e-4;
  double step_high = 2e-3;
  bool derivatives = true;
};

/// Draws (xi, eta) uniformly from the square of half-width low_radius() in
/// each variable until `sample_count` admissible pairs are collected
/// (skipped pairs are counted) and reports min A, min |phi_{mu nu}| and the
/// largest |d^alpha_xi d^beta_eta (m/phi)| / (<xi+eta> min{b}) per order.
SweepReport symbol_bound_sweep(int mu, int nu, double epsilon,
                               std::size_t sample_count,
                               const SweepOptions& options = {});

/// Bilinear symbol m(xi, eta) of T_m(f,g)^(xi) = sum_eta m(xi,eta) f^(xi-eta) g^(eta).
using BilinearSymbol = std::function<Complex(double, double, double, double)>;

inline constexpr int kMaxBilinearN = 64;

/// Direct lattice double sum. Pairs whose difference xi - eta falls off the
/// lattice are omitted (no wrap-around). Throws std::invalid_argument with a
/// cost estimate when N > 64.
SpectralField bilinear_T(const BilinearSymbol& m, const SpectralField& f,
                         const SpectralField& g);

/// m_{mu nu}/phi_{mu nu} as a bilinear symbol in (output xi, eta).
BilinearSymbol phase_ratio_symbol(const PhaseSymbol& phase);

struct SMatrixResult {
  std::array<double, 4> s{};  // row-major
  double residual = 0.0;
  double det = 0.0;
  double inverse_norm = 0.0;  // spectral norm of S^{-1}
};

/// The matrix with
/// (1 - 2 eps^2|x|^2) x / b(x) - (1 - 2 eps^2|y|^2) y / b(y) = S(x,y)(x - y).
/// Throws std::invalid_argument unless eps|x|^2 <= 3 kappa0 and
/// eps|y|^2 <= 3 kappa0.
SMatrixResult s_matrix(Vec2 x, Vec2 y, double epsilon,
                       double kappa0 = 1.0 / 200.0);

}  // namespace nsp2d
