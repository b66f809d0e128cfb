#include "nsp2d/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nsp2d/parallel.hpp"
#include "nsp2d/rng.hpp"

namespace nsp2d {

namespace {

double real_b(double k_sq, double eps) {
  const double r = 1.0 + k_sq - eps * eps * k_sq * k_sq;
  return std::sqrt(std::max(r, 0.0));
}

}  // namespace

PhaseSymbol::PhaseSymbol(double epsilon, double kappa0, int mu, int nu,
                         NFactor factor)
    : epsilon_(epsilon), cutoffs_(epsilon, kappa0), mu_(mu), nu_(nu),
      factor_(factor) {
  if ((mu != 1 && mu != -1) || (nu != 1 && nu != -1))
    throw std::invalid_argument("PhaseSymbol: mu and nu must be +1 or -1");
}

double PhaseSymbol::b(Vec2 xi) const { return real_b(norm_sq(xi), epsilon_); }

double PhaseSymbol::z(Vec2 xi, Vec2 eta) const {
  return epsilon_ * (norm_sq(xi + eta) - norm_sq(xi) - norm_sq(eta));
}

Complex PhaseSymbol::phase(Vec2 xi, Vec2 eta) const {
  return {z(xi, eta), b(xi + eta) - mu_ * b(xi) - nu_ * b(eta)};
}

Complex PhaseSymbol::n_factor(int sign, Vec2 xi) const {
  if (factor_ == NFactor::unit) return 1.0;
  const auto sym = eval_linear_symbol(xi.x, xi.y, epsilon_);
  const Complex lambda = sign > 0 ? sym.lambda_minus : sym.lambda_plus;
  return -lambda / sym.bracket;
}

Complex PhaseSymbol::multiplier(Vec2 xi, Vec2 eta, bool with_cutoffs) const {
  const Vec2 sum = xi + eta;
  double chi = 1.0;
  if (with_cutoffs) {
    chi = cutoffs_.low_total(xi.x, xi.y) * cutoffs_.low_total(eta.x, eta.y) *
          cutoffs_.low_total(sum.x, sum.y);
    if (chi == 0.0) return 0.0;
  }
  return std::sqrt(1.0 + norm_sq(sum)) * chi * n_factor(mu_, xi) *
         n_factor(nu_, eta);
}

bool PhaseSymbol::admissible(Vec2 xi, Vec2 eta) const {
  const Vec2 sum = xi + eta;
  return cutoffs_.low_total(xi.x, xi.y) > 0.0 &&
         cutoffs_.low_total(eta.x, eta.y) > 0.0 &&
         cutoffs_.low_total(sum.x, sum.y) > 0.0;
}

double PhaseSymbol::low_radius() const { return 3.0 / cutoffs_.scale(); }

double quantity_A(Vec2 xi, Vec2 eta, double epsilon) {
  const double x2 = norm_sq(xi);
  const double y2 = norm_sq(eta);
  const double s2 = norm_sq(xi + eta);
  const double e2 = epsilon * epsilon;
  return 1.0 + 2.0 * real_b(x2, epsilon) * real_b(y2, epsilon) -
         2.0 * dot(xi, eta) - e2 * (x2 * x2 + y2 * y2 - s2 * s2);
}

namespace {

// Central-difference weights on offsets -1, 0, +1 for derivative order d.
double stencil_weight(int d, int offset, double h) {
  switch (d) {
    case 0:
      return offset == 0 ? 1.0 : 0.0;
    case 1:
      return offset == 0 ? 0.0 : offset / (2.0 * h);
    default:
      return (offset == 0 ? -2.0 : 1.0) / (h * h);
  }
}

// Values of the ratio on the 3^4 tensor stencil around (xi, eta).
std::array<Complex, 81> stencil_values(const PhaseSymbol& phase, Vec2 xi,
                                       Vec2 eta, double h, bool cutoffs) {
  std::array<Complex, 81> out{};
  int idx = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int d = -1; d <= 1; ++d)
          out[idx++] = phase.ratio({xi.x + a * h, xi.y + b * h},
                                   {eta.x + c * h, eta.y + d * h}, cutoffs);
  return out;
}

Complex derivative(const std::array<Complex, 81>& values,
                   const std::array<int, 4>& orders, double h) {
  Complex acc = 0.0;
  int idx = 0;
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c)
        for (int d = -1; d <= 1; ++d) {
          const double w = stencil_weight(orders[0], a, h) *
                           stencil_weight(orders[1], b, h) *
                           stencil_weight(orders[2], c, h) *
                           stencil_weight(orders[3], d, h);
          if (w != 0.0) acc += w * values[idx];
          ++idx;
        }
  return acc;
}

std::vector<std::array<int, 4>> derivative_orders() {
  std::vector<std::array<int, 4>> out;
  for (int a1 = 0; a1 <= 2; ++a1)
    for (int a2 = 0; a1 + a2 <= 2; ++a2)
      for (int b1 = 0; b1 <= 2; ++b1)
        for (int b2 = 0; b1 + b2 <= 2; ++b2) out.push_back({a1, a2, b1, b2});
  return out;
}

}  // namespace

SweepReport symbol_bound_sweep(int mu, int nu, double epsilon,
                               std::size_t sample_count,
                               const SweepOptions& options) {
  const PhaseSymbol phase(epsilon, options.kappa0, mu, nu);
  SweepReport rep;
  rep.epsilon = epsilon;
  rep.mu = mu;
  rep.nu = nu;
  rep.min_A = std::numeric_limits<double>::infinity();
  rep.min_abs_phi = std::numeric_limits<double>::infinity();
  const double r = phase.low_radius();
  const auto stream = static_cast<std::uint64_t>(10 + 2 * (mu > 0) + (nu > 0));
  CounterRng rng(options.seed, stream);
  const auto orders = derivative_orders();

  while (rep.samples < sample_count) {
    const Vec2 xi{rng.uniform(-r, r), rng.uniform(-r, r)};
    const Vec2 eta{rng.uniform(-r, r), rng.uniform(-r, r)};
    if (!phase.admissible(xi, eta)) {
      ++rep.skipped;
      continue;
    }
    ++rep.samples;
    rep.min_A = std::min(rep.min_A, quantity_A(xi, eta, epsilon));
    rep.min_abs_phi = std::min(rep.min_abs_phi, std::abs(phase.phase(xi, eta)));
    if (!options.derivatives) continue;

    const double scale =
        std::sqrt(1.0 + norm_sq(xi + eta)) *
        std::min({phase.b(xi), phase.b(eta), phase.b(xi + eta)});
    const auto fine = stencil_values(phase, xi, eta, options.step_low,
                                     options.with_cutoffs);
    const auto coarse = stencil_values(phase, xi, eta, options.step_high,
                                       options.with_cutoffs);
    for (const auto& o : orders) {
      const int order = o[0] + o[1] + o[2] + o[3];
      const Complex d = order <= 2 ? derivative(fine, o, options.step_low)
                                   : derivative(coarse, o, options.step_high);
      auto& slot = rep.max_ratio_by_order[order];
      slot = std::max(slot, std::abs(d) / scale);
    }
  }
  return rep;
}

SpectralField bilinear_T(const BilinearSymbol& m, const SpectralField& f,
                         const SpectralField& g) {
  const Grid2D& grid = f.grid();
  if (g.grid() != grid)
    throw std::invalid_argument("bilinear_T: fields live on different grids");
  const int n = grid.n();
  if (n > kMaxBilinearN) {
    std::ostringstream msg;
    msg << "bilinear_T: N = " << n << " exceeds " << kMaxBilinearN
        << "; the direct sum would cost about " << std::pow(double(n), 4.0)
        << " symbol evaluations";
    throw std::invalid_argument(msg.str());
  }
  struct Mode {
    int m1, m2;
    Complex value;
  };
  std::vector<Mode> g_modes;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g(i, j) != Complex(0.0, 0.0))
        g_modes.push_back({grid.signed_mode(i), grid.signed_mode(j), g(i, j)});

  const double dk = grid.dk();
  const int half = n / 2;
  auto index_of = [&](int mode) { return mode < 0 ? mode + n : mode; };
  SpectralField out(grid);
  auto dst = out.coefficients();
  parallel_rows(n, [&](int i) {
    const int x1 = grid.signed_mode(i);
    for (int j = 0; j < n; ++j) {
      const int x2 = grid.signed_mode(j);
      Complex acc = 0.0;
      for (const auto& e : g_modes) {
        const int d1 = x1 - e.m1;
        const int d2 = x2 - e.m2;
        if (d1 < -half || d1 >= half || d2 < -half || d2 >= half) continue;
        const Complex fv = f(index_of(d1), index_of(d2));
        if (fv == Complex(0.0, 0.0)) continue;
        acc += m(x1 * dk, x2 * dk, e.m1 * dk, e.m2 * dk) * fv * e.value;
      }
      dst[grid.flat(i, j)] = acc;
    }
  });
  return out;
}

BilinearSymbol phase_ratio_symbol(const PhaseSymbol& phase) {
  return [phase](double k1, double k2, double e1, double e2) {
    return phase.ratio({k1 - e1, k2 - e2}, {e1, e2});
  };
}

SMatrixResult s_matrix(Vec2 x, Vec2 y, double epsilon, double kappa0) {
  const double x2 = norm_sq(x);
  const double y2 = norm_sq(y);
  if (!(epsilon * x2 <= 3.0 * kappa0 && epsilon * y2 <= 3.0 * kappa0)) {
    std::ostringstream msg;
    msg << "s_matrix: need eps|x|^2 <= 3 kappa0 and eps|y|^2 <= 3 kappa0, got "
        << epsilon * x2 << " and " << epsilon * y2;
    throw std::invalid_argument(msg.str());
  }
  const double e2 = epsilon * epsilon;
  const double bx = real_b(x2, epsilon);
  const double by = real_b(y2, epsilon);
  const double gx = 1.0 - 2.0 * e2 * x2;
  const double gy = 1.0 - 2.0 * e2 * y2;
  const Vec2 s = x + y;
  const double cx = (1.0 - e2 * (x2 + y2)) / (bx * (bx + by));
  const double cy = 2.0 * e2 / gx;
  const double pre = gx / by;

  SMatrixResult out;
  // Id - cx x (x+y)^T - cy y (x+y)^T
  out.s = {pre * (1.0 - cx * x.x * s.x - cy * y.x * s.x),
           pre * (-cx * x.x * s.y - cy * y.x * s.y),
           pre * (-cx * x.y * s.x - cy * y.y * s.x),
           pre * (1.0 - cx * x.y * s.y - cy * y.y * s.y)};
  const Vec2 d = x - y;
  const Vec2 lhs{gx * x.x / bx - gy * y.x / by, gx * x.y / bx - gy * y.y / by};
  const Vec2 rhs{out.s[0] * d.x + out.s[1] * d.y, out.s[2] * d.x + out.s[3] * d.y};
  out.residual = std::sqrt(norm_sq(lhs - rhs));
  out.det = out.s[0] * out.s[3] - out.s[1] * out.s[2];
  const double f2 = out.s[0] * out.s[0] + out.s[1] * out.s[1] +
                    out.s[2] * out.s[2] + out.s[3] * out.s[3];
  const double sigma_max =
      std::sqrt(0.5 * (f2 + std::sqrt(std::max(0.0, f2 * f2 - 4.0 * out.det * out.det))));
  out.inverse_norm = out.det == 0.0 ? std::numeric_limits<double>::infinity()
                                    : sigma_max / std::abs(out.det);
  return out;
}

}  // namespace nsp2d
