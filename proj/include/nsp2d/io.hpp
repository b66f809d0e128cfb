#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsp2d/state.hpp"

namespace nsp2d {

inline constexpr std::size_t kSnapshotHeaderBytes = 32;

/// Decoded snapshot: physical samples of each field, row-major.
struct Snapshot {
  std::uint32_t n = 0;
  double length = 0.0;
  double time = 0.0;
  std::vector<std::vector<double>> fields;
};

/// Header: "NSP2", u32 N, f64 L, f64 time, u32 field count, 4 zero bytes;
/// then each field as N*N little-endian f64 values.
std::vector<unsigned char> encode_snapshot(const Snapshot& snap);
Snapshot decode_snapshot(const std::vector<unsigned char>& bytes);

/// Fields rho_pert, u1, u2, phi.
Snapshot snapshot_of(const PrimitiveState& state);
/// Rebuilds a state from a snapshot written by snapshot_of.
PrimitiveState state_from_snapshot(const Snapshot& snap,
                                   const SimulationParams& params);

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);
void write_file_atomic(const std::string& path,
                       const std::vector<unsigned char>& contents);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
  /// "# format=1", the header row, then the rows.
  std::string render() const;
};

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Reads (t, value) pairs from the first two columns of a CSV, skipping
/// '#' lines and a non-numeric header row.
std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path);

}  // namespace nsp2d
