#include "nsp2d/cli.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "nsp2d/config.hpp"
#include "nsp2d/fit.hpp"
#include "nsp2d/initial_data.hpp"
#include "nsp2d/io.hpp"
#include "nsp2d/linear_propagator.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/norms.hpp"
#include "nsp2d/phase.hpp"
#include "nsp2d/rng.hpp"
#include "nsp2d/solver.hpp"
#include "nsp2d/split.hpp"

namespace nsp2d {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct Criterion {
  std::string name;
  bool passed;
  std::string measured;
};

bool report(std::ostream& out, const std::vector<Criterion>& criteria) {
  bool all = true;
  for (const auto& c : criteria) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.measured << '\n';
    all = all && c.passed;
  }
  return all;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

fs::path output_root(const std::string& override_dir, const ScenarioConfig* cfg) {
  fs::path root = override_dir.empty() ? fs::path(cfg ? cfg->output.dir : ".")
                                       : fs::path(override_dir);
  fs::create_directories(root);
  return root;
}

std::string snapshot_name(long long step) {
  std::ostringstream s;
  s << "snap_" << std::setw(7) << std::setfill('0') << step << ".bin";
  return s.str();
}

// ---------------------------------------------------------------- run

int command_run(const std::string& config_path, const std::string& outdir,
                std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(config_path);
  const auto root = output_root(outdir, &cfg);
  const auto& p = cfg.params;
  CsvTable norms{norm_report_columns(), {}};
  CsvTable energy{{"time", "e3"}, {}};
  const int every = cfg.output.sample_every;
  const int snap_every = cfg.output.snapshot_every;
  auto step_of = [&](double t) { return std::llround(t / p.dt); };

  auto flush = [&] {
    write_file_atomic((root / "norms.csv").string(), norms.render());
    if (cfg.system == RunSystem::split)
      write_file_atomic((root / "energy_e3.csv").string(), energy.render());
  };

  try {
    if (cfg.system == RunSystem::split) {
      auto split = make_split_initial(cfg);
      const long long steps = std::llround(p.t_end / p.dt);
      const SplitStepper stepper(split.main.grid(), p.epsilon, p.dt);
      auto sample = [&](long long k) {
        norms.add_row(norm_report_row(make_norm_report(split.combined())));
        energy.add_row({split.time(), energy_E3(split.pert, split.main)});
        if (snap_every > 0 && k % snap_every == 0)
          write_snapshot((root / snapshot_name(k)).string(), snapshot_of(split.combined()));
      };
      sample(0);
      try {
        for (long long k = 1; k <= steps; ++k) {
          split = stepper.step(split);
          split.main.time = split.pert.time = k * p.dt;
          if (k % every == 0 || k == steps) sample(k);
        }
      } catch (const NumericalAbort& e) {
        write_snapshot((root / "abort.bin").string(), snapshot_of(split.combined()));
        throw;
      }
      write_snapshot((root / "final.bin").string(), snapshot_of(split.combined()));
    } else {
      const auto initial = generate_initial(cfg);
      TrajectoryOptions opts;
      opts.step.kind = cfg.system == RunSystem::full ? SystemKind::full
                                                     : SystemKind::irrotational;
      opts.sample_every = every;
      const auto final_state = run_trajectory(initial, opts, [&](const PrimitiveState& s) {
        norms.add_row(norm_report_row(make_norm_report(s)));
        const long long k = step_of(s.time);
        if (snap_every > 0 && k % snap_every == 0)
          write_snapshot((root / snapshot_name(k)).string(), snapshot_of(s));
      });
      write_snapshot((root / "final.bin").string(), snapshot_of(final_state));
    }
  } catch (const NumericalAbort& e) {
    flush();
    if (e.snapshot() && !fs::exists(root / "abort.bin"))
      write_snapshot((root / "abort.bin").string(), snapshot_of(*e.snapshot()));
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  }
  flush();
  out << "run complete: " << norms.rows.size() << " samples written to "
      << (root / "norms.csv").string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

std::vector<std::vector<double>> read_numeric_rows(const fs::path& path) {
  std::ifstream f(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

int command_sweep(const std::string& config_path, const std::string& outdir,
                  std::ostream& out, std::ostream& err) {
  const auto cfg = load_config(config_path);
  const auto root = output_root(outdir, &cfg);
  const auto& eps_list = cfg.sweep.epsilon_list;
  const double theta = cfg.params.theta;
  out.flush();
  err.flush();

  std::vector<pid_t> workers;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const pid_t pid = ::fork();
    if (pid < 0) throw std::runtime_error("sweep: fork failed");
    if (pid == 0) {
      int code = 0;
      try {
        const auto r = lifespan_probe(eps_list[i], theta, cfg);
        CsvTable row{{"epsilon", "theta", "threshold", "t_star", "t_cap", "crossed", "aborted"}, {}};
        row.add_row({r.epsilon, r.theta, r.threshold, r.t_star, r.t_cap,
                     r.crossed ? 1.0 : 0.0, r.aborted ? 1.0 : 0.0});
        write_file_atomic((root / ("lifespan_" + std::to_string(i) + ".csv")).string(), row.render());
        CsvTable series{{"time", "e3"}, {}};
        for (const auto& s : r.energy_series) series.add_row({s.t, s.value});
        write_file_atomic((root / ("energy_" + std::to_string(i) + ".csv")).string(), series.render());
      } catch (const std::exception& e) {
        std::cerr << "sweep worker " << i << ": " << e.what() << '\n';
        code = kExitNumerical;
      }
      std::_Exit(code);
    }
    workers.push_back(pid);
  }
  bool ok = true;
  for (pid_t pid : workers) {
    int status = 0;
    ::waitpid(pid, &status, 0);
    ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  if (!ok) {
    err << "sweep: at least one worker failed\n";
    return kExitNumerical;
  }

  CsvTable table{{"epsilon", "theta", "threshold", "t_star", "t_cap", "crossed", "fitted_slope"}, {}};
  std::vector<double> x, y;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const auto rows = read_numeric_rows(root / ("lifespan_" + std::to_string(i) + ".csv"));
    if (rows.empty()) throw std::runtime_error("sweep: missing worker output");
    const auto& r = rows[0];
    table.rows.push_back({format_number(r[0]), format_number(r[1]), format_number(r[2]),
                          format_number(r[3]), format_number(r[4]),
                          format_number(r[5]), ""});
    x.push_back(std::log(1.0 / r[0]));
    y.push_back(std::log(r[3]));
  }
  double slope = std::nan("");
  if (x.size() >= 2) slope = fit_line(x, y).exponent;
  table.rows.push_back({"footer", "", "", "", "", "", format_number(slope)});
  write_file_atomic((root / "lifespan.csv").string(), table.render());
  out << "sweep complete: fitted slope " << fmt(slope) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- verify-linear

struct BandRate {
  double epsilon;
  std::string band;
  double rate;
  double residual;
};

double oracle_residual_in_band(const CutoffFamily& cutoffs, Band band,
                               const Grid2D& grid, double t_max,
                               std::size_t samples, CounterRng& rng) {
  double worst = 0.0;
  const int n = grid.n();
  std::size_t got = 0;
  for (std::size_t tries = 0; got < samples && tries < 100 * samples; ++tries) {
    const int i = static_cast<int>(rng.uniform() * n);
    const int j = static_cast<int>(rng.uniform() * n);
    const double k1 = grid.wavenumber(i), k2 = grid.wavenumber(j);
    if (band_value(cutoffs, band, k1, k2) <= 0.0) continue;
    ++got;
    const double t = rng.uniform(0.0, t_max);
    const auto sym = eval_linear_symbol(k1, k2, cutoffs.epsilon());
    worst = std::max(worst, relative_distance(green_matrix(t, sym),
                                              expm_reference(Complex(-t) * sym.a_hat)));
  }
  return worst;
}

double band_rate(const Grid2D& grid, const CutoffFamily& cutoffs, Band band,
                 double t_max, int count) {
  std::vector<Sample> series;
  for (int k = 0; k <= count; ++k) {
    const double t = t_max * k / count;
    series.push_back({t, band_max_green_norm(grid, cutoffs, band, t)});
  }
  return -fit_exponential(series, 0.0, t_max).exponent;
}

SpectralField gaussian_field(const Grid2D& g, double width) {
  std::vector<double> v(g.size());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      const double x1 = g.coordinate(i), x2 = g.coordinate(j);
      v[g.flat(i, j)] = std::exp(-(x1 * x1 + x2 * x2) / (2.0 * width * width));
    }
  return SpectralField::from_physical(g, std::span<const double>(v));
}

int command_verify_linear(bool quick, const std::string& outdir,
                          std::ostream& out) {
  const auto root = output_root(outdir, nullptr);
  std::vector<Criterion> crit;
  CounterRng rng(2024, 100);

  {
    const std::size_t count = quick ? 2000 : 10000;
    double worst = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
      const double eps = rng.uniform(1e-3, 1.0);
      double k = rng.uniform(0.0, 20.0);
      if (s % 100 == 0) {
        // r = 1 + k^2 - eps^2 k^4 = 0 at k^2 = (1 + sqrt(1 + 4 eps^2)) / (2 eps^2)
        const double kc = std::sqrt((1.0 + std::sqrt(1.0 + 4.0 * eps * eps)) / (2.0 * eps * eps));
        k = kc * (1.0 + rng.uniform(-1e-9, 1e-9));
      }
      const double ang = rng.uniform(0.0, 2.0 * M_PI);
      const auto sym = eval_linear_symbol(k * std::cos(ang), k * std::sin(ang), eps);
      const double t = rng.uniform(0.0, 5.0);
      worst = std::max(worst, relative_distance(green_matrix(t, sym),
                                                expm_reference(Complex(-t) * sym.a_hat)));
    }
    crit.push_back({"green_matrix vs scaling-and-squaring oracle (<= 1e-10)",
                    worst <= 1e-10, "max relative residual " + fmt(worst)});
  }
  {
    double worst = 0.0;
    for (int s = 0; s < 2000; ++s) {
      const double eps = rng.uniform(1e-3, 1.0);
      const auto sym = eval_linear_symbol(rng.uniform(-10, 10), rng.uniform(-10, 10), eps);
      const double t = rng.uniform(0.0, 3.0), u = rng.uniform(0.0, 3.0);
      worst = std::max(worst, relative_distance(green_matrix(t, sym) * green_matrix(u, sym),
                                                green_matrix(t + u, sym)));
    }
    crit.push_back({"semigroup G(t+s) = G(t)G(s) (<= 1e-10)", worst <= 1e-10,
                    "max relative residual " + fmt(worst)});
  }
  {
    double worst = 0.0;
    for (double eps : {1.0, 0.1, 0.01}) {
      const CutoffFamily cut(eps);
      const double r = 3.0 / cut.scale();
      for (int s = 0; s < 2000; ++s) {
        const double k = rng.uniform(0.0, r), ang = rng.uniform(0.0, 2.0 * M_PI);
        const auto sym = eval_linear_symbol(k * std::cos(ang), k * std::sin(ang), eps);
        const auto rebuilt = sym.q * Mat2::diag(-sym.lambda_minus, -sym.lambda_plus) * sym.q_inv;
        worst = std::max(worst, relative_distance(rebuilt, sym.a_hat));
      }
    }
    crit.push_back({"Q diag(-lambda_-, -lambda_+) Q^-1 = A-hat on chi^L (<= 1e-10)",
                    worst <= 1e-10, "max relative residual " + fmt(worst)});
  }

  std::vector<BandRate> rates;
  {
    const Grid2D grid(quick ? 128 : 256, 64.0 * M_PI);
    const int count = quick ? 20 : 40;
    std::vector<double> high;
    double mid_min = 1e300;
    for (double eps : {1.0, 0.1, 0.01}) {
      const CutoffFamily cut(eps);
      const double rh = band_rate(grid, cut, Band::high, 200.0, count);
      const double rm = band_rate(grid, cut, Band::mid, 2000.0, count);
      high.push_back(rh);
      mid_min = std::min(mid_min, rm);
      rates.push_back({eps, "high", rh,
                       oracle_residual_in_band(cut, Band::high, grid, 50.0, 200, rng)});
      rates.push_back({eps, "mid", rm,
                       oracle_residual_in_band(cut, Band::mid, grid, 50.0, 200, rng)});
    }
    const double lo = *std::min_element(high.begin(), high.end());
    const double hi = *std::max_element(high.begin(), high.end());
    crit.push_back({"high-band decay rates positive, spread < 4x", lo > 0.0 && hi < 4.0 * lo,
                    "rates " + fmt(high[0]) + ", " + fmt(high[1]) + ", " + fmt(high[2])});
    const double kappa0 = 1.0 / 200.0;
    crit.push_back({"mid-band decay rate >= 0.8 kappa0/5", mid_min >= 0.8 * kappa0 / 5.0,
                    "min rate " + fmt(mid_min) + " vs " + fmt(0.8 * kappa0 / 5.0)});
  }
  {
    const int n = quick ? 256 : 512;
    const Grid2D grid(n, 64.0 * M_PI);
    const CutoffFamily cut(0.01);
    const auto w = gaussian_field(grid, 1.0);
    std::vector<Sample> series;
    for (int k = 0; k <= 38; ++k) {
      const double t = 2.0 + k;
      const auto f = half_wave(w, t, cut);
      series.push_back({t, sobolev_norm(f, 0.0, std::numeric_limits<double>::infinity())});
    }
    const auto fit = fit_decay(series, 2.0, 40.0);
    crit.push_back({"dispersive sup-norm decay exponent in [-1.25, -0.75], r^2 >= 0.95",
                    fit.exponent >= -1.25 && fit.exponent <= -0.75 && fit.r_squared >= 0.95,
                    "exponent " + fmt(fit.exponent) + ", r^2 " + fmt(fit.r_squared)});
  }

  CsvTable csv{{"epsilon", "band", "fitted_rate", "max_residual_vs_oracle"}, {}};
  for (const auto& r : rates)
    csv.rows.push_back({format_number(r.epsilon), r.band, format_number(r.rate),
                        format_number(r.residual)});
  write_file_atomic((root / "verify_linear.csv").string(), csv.render());
  return report(out, crit) ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------- verify-phase

int command_verify_phase(double epsilon, const std::string& which,
                         std::size_t samples, std::ostream& out) {
  if (which.size() != 2 || (which[0] != '+' && which[0] != '-') ||
      (which[1] != '+' && which[1] != '-'))
    throw ValidationError("--case must be one of ++, +-, -+, --");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ValidationError("--epsilon must lie in (0,1]");
  const int mu = which[0] == '+' ? 1 : -1;
  const int nu = which[1] == '+' ? 1 : -1;
  const auto rep = symbol_bound_sweep(mu, nu, epsilon, samples);
  json j;
  j["epsilon"] = epsilon;
  j["case"] = which;
  j["min_A"] = rep.min_A;
  j["min_abs_phi"] = rep.min_abs_phi;
  j["max_ratio_by_order"] = rep.max_ratio_by_order;
  j["samples"] = rep.samples;
  j["skipped"] = rep.skipped;
  j["regularity_2plus"] = 2.25;
  j["regularity_3plus"] = 3.25;
  out << j.dump() << '\n';
  bool finite = true;
  for (double r : rep.max_ratio_by_order) finite = finite && std::isfinite(r);
  std::vector<Criterion> crit{
      {"min A >= 0.9", rep.min_A >= 0.9, fmt(rep.min_A)},
      {"symbol ratios finite", finite, "order 0 max " + fmt(rep.max_ratio_by_order[0])}};
  if (mu == 1 && nu == 1)
    crit.push_back({"min |phi_++| >= 0.5", rep.min_abs_phi >= 0.5, fmt(rep.min_abs_phi)});
  return report(out, crit) ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------- fit-decay

int command_fit_decay(const std::string& path, const std::string& window,
                      std::ostream& out) {
  const auto comma = window.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--window must be 'a,b'");
  double a = 0.0, b = 0.0;
  try {
    a = std::stod(window.substr(0, comma));
    b = std::stod(window.substr(comma + 1));
  } catch (const std::exception&) {
    throw ValidationError("--window must be two numbers 'a,b'");
  }
  std::vector<Sample> series;
  for (const auto& [t, v] : read_two_column_csv(path)) series.push_back({t, v});
  DecayFit fit;
  try {
    fit = fit_decay(series, a, b);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  std::ostringstream exponent;
  exponent.setf(std::ios::fixed);
  exponent.precision(6);
  exponent << fit.exponent;
  json j;
  j["exponent"] = fit.exponent;
  j["exponent_fixed"] = exponent.str();
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["window"] = {fit.t_min, fit.t_max};
  j["samples"] = fit.samples;
  out << j.dump() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- gen-init

int command_gen_init(const std::string& config_path, const std::string& outdir,
                     std::ostream& out) {
  const auto cfg = load_config(config_path);
  const auto root = output_root(outdir, &cfg);
  const auto parts = generate_initial_parts(cfg);
  const auto state = parts.combined();
  write_snapshot((root / "init.bin").string(), snapshot_of(state));
  const CutoffFamily cut(cfg.params.epsilon, cfg.params.kappa0);
  json j;
  j["profile"] = to_string(cfg.init.profile);
  j["seed"] = cfg.init.seed;
  j["irrotational_norm"] = parts.irrotational_norm;
  j["rotational_h3"] = parts.rotational_norm;
  j["y_norm"] = y_norm(state, cfg.init.y_sigma, cut);
  j["relative_curl_irrotational"] =
      curl(parts.irrotational.u).l2_norm() /
      std::max(l2_norm(parts.irrotational.u), 1e-300);
  out << j.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"nsp2d: pseudospectral Navier-Stokes-Poisson laboratory", "nsp2d"};
  app.require_subcommand(1);
  std::string outdir;
  app.add_option("--output-dir", outdir, "Directory for all outputs");
  app.fallthrough();

  std::string config_path, csv_path, window, which = "++";
  bool quick = false;
  double epsilon = 0.1;
  std::size_t samples = 100000;
  auto* run = app.add_subcommand("run", "Integrate one trajectory");
  run->add_option("config", config_path)->required();
  auto* sweep = app.add_subcommand("sweep", "Lifespan sweep over epsilon");
  sweep->add_option("config", config_path)->required();
  auto* vlin = app.add_subcommand("verify-linear", "Self-checks of the linear theory");
  vlin->add_flag("--quick", quick);
  auto* vphase = app.add_subcommand("verify-phase", "Phase and symbol bounds");
  vphase->add_option("--epsilon", epsilon)->required();
  vphase->add_option("--case", which);
  vphase->add_option("--samples", samples);
  auto* fitd = app.add_subcommand("fit-decay", "Power-law fit of a (t, value) CSV");
  fitd->add_option("series", csv_path)->required();
  fitd->add_option("--window", window)->required();
  auto* gen = app.add_subcommand("gen-init", "Generate and calibrate initial data");
  gen->add_option("config", config_path)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (run->parsed()) return command_run(config_path, outdir, out, err);
    if (sweep->parsed()) return command_sweep(config_path, outdir, out, err);
    if (vlin->parsed()) return command_verify_linear(quick, outdir, out);
    if (vphase->parsed()) return command_verify_phase(epsilon, which, samples, out);
    if (fitd->parsed()) return command_fit_decay(csv_path, window, out);
    if (gen->parsed()) return command_gen_init(config_path, outdir, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace nsp2d
