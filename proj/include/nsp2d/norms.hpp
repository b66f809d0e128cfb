#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nsp2d/cutoffs.hpp"
#include "nsp2d/state.hpp"

namespace nsp2d {

/// Discrete L^p norm of the pointwise Euclidean magnitude of a family of
/// (possibly complex) physical samples, with cell weight (L/N)^2.
/// p = infinity gives the maximum.
double lp_norm(const Grid2D& grid,
               std::span<const std::vector<Complex>> components, double p);

/// ||<nabla>^s f||_{L^p}. Throws std::domain_error on non-finite data.
double sobolev_norm(const SpectralField& f, double s, double p);
/// Vector version with the pointwise Euclidean magnitude.
double sobolev_norm(std::span<const SpectralField> fields, double s, double p);

/// H^s norm through Parseval (no transforms).
double hs_norm(const SpectralField& f, double s);
double hs_norm(std::span<const SpectralField> fields, double s);

/// (rho, u1, u2, d1 phi, d2 phi).
std::vector<SpectralField> primitive_components(const PrimitiveState& state);

/// sum_{|alpha| <= order} int weight |d^alpha f|^2 dx for every field,
/// where weight = 1 + weight_pert (omitted weight means 1).
double derivative_energy(std::span<const SpectralField> fields, int order,
                         const std::vector<double>* weight_pert = nullptr);

/// E_N = sum_{|alpha|<=N} 1/2 int rho|d^alpha u|^2 + |d^alpha rho|^2
///       + |d^alpha grad phi|^2.
double energy_EN(const PrimitiveState& state, int order);

/// Fraction of sum_k |f|^2 located in the central box [-L/4, L/4)^2.
double mass_fraction(std::span<const SpectralField> fields);
inline constexpr double kMassContainment = 0.99;

struct XtComponents {
  double low_disp = 0.0;
  double weighted = 0.0;
  double weighted_h4 = 0.0;  // the same profile measured in H^{4+delta}
  double low_sob = 0.0;
  double mid_sob = 0.0;
  double mid_w14 = 0.0;
  double high_sob = 0.0;
  double top_sob = 0.0;
};

struct NormReport {
  double time = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  double w1inf = 0.0;
  XtComponents xt;
  double e_n = 0.0;
  double weighted_high = 0.0;
  double band_low = 0.0;
  double band_mid = 0.0;
  double band_high = 0.0;
  double mass_fraction = 1.0;
  bool stale = false;
};

/// Column names of norms.csv, in output order.
const std::vector<std::string>& norm_report_columns();
std::vector<double> norm_report_row(const NormReport& report);

/// Components of the X_T norm at time t for U = (a, c).
XtComponents xt_components(const SymmetrizedState& u, double t,
                           const SimulationParams& params,
                           const CutoffFamily& cutoffs);

/// Full diagnostics at one instant.
NormReport make_norm_report(const PrimitiveState& state);

/// ||<x> (rho, u, grad phi)^h||_{L^2}.
double weighted_high_norm(const PrimitiveState& state,
                          const CutoffFamily& cutoffs);

/// Initial-data norm Y^sigma of (rho, u, grad phi).
double y_norm(const PrimitiveState& initial, int sigma,
              const CutoffFamily& cutoffs);

/// sum_j 2^{2js} ||Delta_j f||^2 over the dyadic family.
double besov_square_sum(const SpectralField& f, double s);

/// Compactly supported profile zeta with |x| <= extent on its support.
struct CompactProfile {
  std::function<double(double, double)> value;
  double extent;
};

/// Smooth bump centered at (1/2, 0) with radius 1.
CompactProfile default_commutator_profile();

/// ||zeta_R (Theta(D) f) - Theta(D)(zeta_R f)||_{L^2}, zeta_R(x) = zeta(x/R).
/// Throws std::invalid_argument if R * extent reaches the box edge.
double commutator_probe(double r, const std::function<Complex(double, double)>& theta,
                        const CompactProfile& zeta, const SpectralField& f);

}  // namespace nsp2d
