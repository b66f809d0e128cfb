#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsp2d/state.hpp"

namespace nsp2d {

enum class InitProfile { gaussian_irrotational, gaussian_vortex, combined };
enum class CalibrationTarget { y_norm, h3_norm };
enum class RunSystem { irrotational, full, split };

struct GridConfig {
  int n = 128;
  double length = 64.0 * 3.14159265358979323846;
  double dealias = 2.0 / 3.0;
};

struct InitConfig {
  InitProfile profile = InitProfile::gaussian_irrotational;
  CalibrationTarget target = CalibrationTarget::y_norm;
  std::uint64_t seed = 1;
  /// Y^sigma index used for the irrotational calibration.
  int y_sigma = 4;
  /// Irrotational data is scaled to Y norm theta / calibration_c.
  double calibration_c = 10.0;
};

struct OutputConfig {
  std::string dir = ".";
  int sample_every = 1;
  int snapshot_every = 0;  // 0 disables snapshots
};

struct SweepConfig {
  std::vector<double> epsilon_list = {0.2, 0.1, 0.05};
  double t_cap_factor = 4.0;
  int energy_every = 1;
};

struct ScenarioConfig {
  GridConfig grid;
  SimulationParams params;
  RunSystem system = RunSystem::irrotational;
  InitConfig init;
  OutputConfig output;
  SweepConfig sweep;

  Grid2D make_grid() const { return Grid2D(grid.n, grid.length, grid.dealias); }
  /// Throws ValidationError naming the offending key.
  void validate() const;
};

/// Flat "key = value" text; '#' starts a comment. Unknown or repeated keys
/// are rejected.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Every accepted key, in documentation order.
const std::vector<std::string>& config_keys();

std::string to_string(InitProfile p);
std::string to_string(RunSystem s);

}  // namespace nsp2d
