#pragma once

#include <vector>

#include "nsp2d/cutoffs.hpp"
#include "nsp2d/linear_symbol.hpp"
#include "nsp2d/state.hpp"

namespace nsp2d {

/// Per-mode Green matrices for one fixed time step, cached so that a
/// trajectory pays for the exponentials once.
class LinearPropagator {
 public:
  LinearPropagator(const Grid2D& grid, double epsilon, double t,
                   SystemKind kind = SystemKind::irrotational);

  double time() const { return t_; }
  double epsilon() const { return epsilon_; }

  /// Applies exp(-t A-hat) to (a, c), every mode including xi = 0.
  SymmetrizedState apply(const SymmetrizedState& u) const;

  /// Exact linear flow of the primitive variables. The potential part of u
  /// and rho follow the Green matrix through (a, c); the rotational part of
  /// u decays at its own viscous rate and the zero modes stay fixed.
  void apply_primitive(SpectralField& rho, VectorField& u) const;

 private:
  Grid2D grid_;
  double epsilon_;
  double t_;
  std::vector<GreenEntries> green_;
  std::vector<double> rotational_decay_;
};

SymmetrizedState propagate_linear(const SymmetrizedState& u, double t,
                                  double epsilon);

/// e^{itb(D)} chi^L(D) w.
SpectralField half_wave(const SpectralField& w, double t,
                        const CutoffFamily& cutoffs);

/// First component of Q^{-1} chi^L U:
/// (lambda_+ a + <xi> c) / (2 i b) on the low band.
SpectralField extract_w(const SymmetrizedState& u, const CutoffFamily& cutoffs);

/// Both components of Q^{-1} chi^L U.
std::array<SpectralField, 2> diagonal_components(const SymmetrizedState& u,
                                                 const CutoffFamily& cutoffs);

/// Largest spectral norm of exp(-t A-hat(xi)) over lattice modes where the
/// band cutoff is positive. Returns 0 when the band holds no mode.
double band_max_green_norm(const Grid2D& grid, const CutoffFamily& cutoffs,
                           Band band, double t);

/// Number of lattice modes inside the support of a band.
std::size_t band_mode_count(const Grid2D& grid, const CutoffFamily& cutoffs,
                            Band band);

}  // namespace nsp2d
