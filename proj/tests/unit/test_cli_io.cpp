#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "nsp2d/cli.hpp"
#include "nsp2d/config.hpp"
#include "nsp2d/initial_data.hpp"
#include "nsp2d/io.hpp"
#include "nsp2d/multipliers.hpp"
#include "nsp2d/norms.hpp"
#include "nsp2d/rng.hpp"

using namespace nsp2d;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nsp2d_test_" + std::to_string(::getpid()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nsp2d");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::uint64_t mix_ref(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ScenarioConfig small_config(double theta, InitProfile profile) {
  ScenarioConfig c;
  c.grid.n = 64;
  c.grid.length = 64.0 * fixtures::kPi;
  c.params.epsilon = 0.1;
  c.params.theta = theta;
  c.init.profile = profile;
  return c;
}

}  // namespace

TEST_CASE("config parsing accepts the documented keys") {
  const auto c = parse_config(
      "# comment\n"
      "grid.n = 32   # trailing comment\n"
      "params.epsilon = 0.25\n"
      "params.system = split\n"
      "init.profile = combined\n"
      "sweep.epsilon_list = 0.2, 0.1\n");
  CHECK(c.grid.n == 32);
  CHECK(c.params.epsilon == 0.25);
  CHECK(c.system == RunSystem::split);
  CHECK(c.init.profile == InitProfile::combined);
  CHECK(c.sweep.epsilon_list == std::vector<double>{0.2, 0.1});
  CHECK(config_keys().size() >= 15);
}

TEST_CASE("config errors name the line and key") {
  auto message = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("grid.n = 32\nbogus = 1\n").find("line 2") != std::string::npos);
  CHECK(message("grid.n = 32\nbogus = 1\n").find("bogus") != std::string::npos);
  CHECK(message("grid.n = 32\ngrid.n = 64\n").find("repeated") != std::string::npos);
  const auto bad = message("\n\nparams.epsilon = abc\n");
  CHECK(bad.find("line 3") != std::string::npos);
  CHECK(bad.find("params.epsilon") != std::string::npos);
  CHECK(message("grid.n = 33\n").find("grid.n") != std::string::npos);
  CHECK(message("params.system = sideways\n").find("params.system") != std::string::npos);
  CHECK(message("no equals sign\n").find("line 1") != std::string::npos);
}

TEST_CASE("missing config file exits with the validation code") {
  const auto r = cli({"run", "/nonexistent/path/x.cfg"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("file not found") != std::string::npos);
  CHECK(cli({"frobnicate"}).code == kExitValidation);
}

TEST_CASE("counter RNG matches the reference SplitMix64 sequence") {
  CHECK(counter_bits(0, 0, 0) == 0xE220A8397B1DCDAFULL);
  CHECK(counter_bits(1234567, 0, 0) == 6457827717110365317ULL);
  CHECK(counter_bits(1234567, 0, 1) == 3203168211198807973ULL);
  const std::uint64_t seed = 42, stream = 3;
  for (std::uint64_t k = 0; k < 5; ++k)
    CHECK(counter_bits(seed, stream, k) ==
          mix_ref((seed ^ (stream * 0xD1B54A32D192ED03ULL)) + (k + 1) * 0x9E3779B97F4A7C15ULL));
  CounterRng rng(seed, stream);
  const auto first = counter_bits(seed, stream, 0);
  CHECK(rng.uniform() == static_cast<double>(first >> 11) * 0x1.0p-53);
  CHECK(rng.counter() == 1);
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
  }
}

TEST_CASE("snapshot encoding: header bytes and round trip") {
  Snapshot s;
  s.n = 4;
  s.length = 12.5;
  s.time = 0.75;
  s.fields = {std::vector<double>(16, 1.5), std::vector<double>(16, -2.0)};
  s.fields[1][5] = 3.25;
  const auto bytes = encode_snapshot(s);
  REQUIRE(bytes.size() == kSnapshotHeaderBytes + 2 * 16 * 8);
  CHECK(std::memcmp(bytes.data(), "NSP2", 4) == 0);
  std::uint32_t n = 0, count = 0, pad = 1;
  double length = 0.0, time = 0.0;
  std::memcpy(&n, bytes.data() + 4, 4);
  std::memcpy(&length, bytes.data() + 8, 8);
  std::memcpy(&time, bytes.data() + 16, 8);
  std::memcpy(&count, bytes.data() + 24, 4);
  std::memcpy(&pad, bytes.data() + 28, 4);
  CHECK(n == 4);
  CHECK(length == 12.5);
  CHECK(time == 0.75);
  CHECK(count == 2);
  CHECK(pad == 0);
  const auto back = decode_snapshot(bytes);
  CHECK(back.n == 4);
  CHECK(back.fields == s.fields);
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS((void)decode_snapshot(truncated));
  auto wrong = bytes;
  wrong[0] = 'X';
  CHECK_THROWS((void)decode_snapshot(wrong));
}

TEST_CASE("state snapshots round trip through disk") {
  const auto dir = scratch("snap");
  const Grid2D g(32, 20.0);
  SimulationParams p;
  auto rho = fixtures::random_band_limited(g, 8, 3);
  rho(0, 0) = 0.0;
  const PrimitiveState st(1.25, Complex(0.01) * rho,
                          Complex(0.01) * VectorField{fixtures::random_band_limited(g, 8, 4),
                                                      fixtures::random_band_limited(g, 8, 5)},
                          p);
  const auto snap = snapshot_of(st);
  CHECK(snap.fields.size() == 4);
  write_snapshot((dir / "s.bin").string(), snap);
  const auto read = read_snapshot((dir / "s.bin").string());
  CHECK(read.time == 1.25);
  CHECK(read.fields == snap.fields);
  const auto st2 = state_from_snapshot(read, p);
  CHECK(relative_difference(st2.rho_pert, st.rho_pert) <= 1e-13);
  CHECK(relative_difference(st2.u[0], st.u[0]) <= 1e-13);
  fs::remove_all(dir);
}

TEST_CASE("CSV rendering, atomic writes and reading back") {
  const auto dir = scratch("csv");
  CsvTable t{{"time", "value"}, {}};
  t.add_row({0.0, 1.0});
  t.add_row({0.1, 1.0 / 3.0});
  const auto text = t.render();
  CHECK(text.rfind("# format=1\ntime,value\n", 0) == 0);
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  const auto path = dir / "t.csv";
  write_file_atomic(path.string(), text);
  CHECK(slurp(path) == text);
  write_file_atomic(path.string(), std::string("# format=1\nt,v\n2,3\n"));
  CHECK(slurp(path) == "# format=1\nt,v\n2,3\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  const auto rows = read_two_column_csv(path.string());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].first == 2.0);
  CHECK(rows[0].second == 3.0);
  fs::remove_all(dir);
}

TEST_CASE("fit-decay subcommand on a synthetic series") {
  const auto dir = scratch("fit");
  CsvTable t{{"time", "value"}, {}};
  for (int k = 0; k <= 100; ++k) t.add_row({0.5 * k, 1.0 / (1.0 + 0.5 * k)});
  write_file_atomic((dir / "s.csv").string(), t.render());
  const auto r = cli({"fit-decay", (dir / "s.csv").string(), "--window", "1,50"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"exponent_fixed\":\"-1.000000\"") != std::string::npos);
  CHECK(cli({"fit-decay", (dir / "s.csv").string(), "--window", "1"}).code == kExitValidation);
  CHECK(cli({"fit-decay", (dir / "s.csv").string(), "--window", "49,50"}).code == kExitValidation);
  fs::remove_all(dir);
}

TEST_CASE("gen-init is deterministic in the seed") {
  const auto dir = scratch("gen");
  const std::string cfg = "grid.n = 32\ngrid.length = 100\nparams.epsilon = 0.2\nparams.theta = 0.1\n"
                          "init.profile = combined\ninit.seed = 5\n";
  write_file_atomic((dir / "a.cfg").string(), cfg);
  REQUIRE(cli({"--output-dir", (dir / "one").string(), "gen-init", (dir / "a.cfg").string()}).code == 0);
  REQUIRE(cli({"--output-dir", (dir / "two").string(), "gen-init", (dir / "a.cfg").string()}).code == 0);
  CHECK(slurp(dir / "one" / "init.bin") == slurp(dir / "two" / "init.bin"));
  fs::remove_all(dir);
}

TEST_CASE("zero amplitude gives the equilibrium") {
  const auto st = generate_initial(small_config(0.0, InitProfile::combined));
  CHECK(fixtures::max_coeff(st.rho_pert) == 0.0);
  CHECK(fixtures::max_coeff(st.u[0]) == 0.0);
  CHECK(fixtures::max_coeff(st.u[1]) == 0.0);
}

TEST_CASE("calibrated data hits its targets") {
  const auto cfg = small_config(0.1, InitProfile::combined);
  const auto parts = generate_initial_parts(cfg);
  const double h3 = velocity_h3_norm(parts.rotational);
  CHECK(h3 >= 0.0099);
  CHECK(h3 <= 0.0101);
  const CutoffFamily cut(cfg.params.epsilon, cfg.params.kappa0);
  const double y = y_norm(parts.irrotational, cfg.init.y_sigma, cut);
  const double target = cfg.params.theta / cfg.init.calibration_c;
  CHECK(std::abs(y - target) <= 0.01 * target);
  CHECK(curl(parts.irrotational.u).l2_norm() <= 1e-10 * l2_norm(parts.irrotational.u));
  CHECK(divergence(parts.rotational.u).l2_norm() <= 1e-10 * l2_norm(parts.rotational.u));
  CHECK(std::abs(parts.irrotational.rho_pert(0, 0)) == 0.0);
}

TEST_CASE("calibration reports a missing bracket") {
  CHECK(calibrate_amplitude([](double a) { return 2.0 * a; }, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS((void)calibrate_amplitude([](double) { return 1.0; }, 2.0), std::runtime_error);
}

TEST_CASE("verify-linear --quick reports its criteria promptly") {
  const auto dir = scratch("vlin");
  const auto start = std::chrono::steady_clock::now();
  const auto r = cli({"--output-dir", dir.string(), "verify-linear", "--quick"});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.code == 0);
  std::size_t lines = 0;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);)
    if (l.rfind("PASS ", 0) == 0 || l.rfind("FAIL ", 0) == 0) ++lines;
  CHECK(lines >= 4);
  CHECK(secs < 60.0);
  CHECK(slurp(dir / "verify_linear.csv").rfind("# format=1\nepsilon,band,fitted_rate,max_residual_vs_oracle", 0) == 0);
  fs::remove_all(dir);
}
