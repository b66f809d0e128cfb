#include "nsp2d/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "nsp2d/multipliers.hpp"

namespace nsp2d {

namespace {

template <class T>
void put(std::vector<unsigned char>& out, T value) {
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
  out.insert(out.end(), raw, raw + sizeof(T));
}

template <class T>
T get(const std::vector<unsigned char>& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size())
    throw std::runtime_error("snapshot: truncated data");
  unsigned char raw[sizeof(T)];
  std::memcpy(raw, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i)
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
  pos += sizeof(T);
  T value;
  std::memcpy(&value, raw, sizeof(T));
  return value;
}

}  // namespace

std::vector<unsigned char> encode_snapshot(const Snapshot& snap) {
  std::vector<unsigned char> out;
  const std::size_t per_field = static_cast<std::size_t>(snap.n) * snap.n;
  out.reserve(kSnapshotHeaderBytes + snap.fields.size() * per_field * 8);
  out.insert(out.end(), {'N', 'S', 'P', '2'});
  put<std::uint32_t>(out, snap.n);
  put<double>(out, snap.length);
  put<double>(out, snap.time);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(snap.fields.size()));
  put<std::uint32_t>(out, 0);
  for (const auto& f : snap.fields) {
    if (f.size() != per_field)
      throw std::invalid_argument("snapshot: field size does not match N*N");
    for (double v : f) put<double>(out, v);
  }
  return out;
}

Snapshot decode_snapshot(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kSnapshotHeaderBytes || std::memcmp(bytes.data(), "NSP2", 4) != 0)
    throw std::runtime_error("snapshot: bad magic");
  std::size_t pos = 4;
  Snapshot s;
  s.n = get<std::uint32_t>(bytes, pos);
  s.length = get<double>(bytes, pos);
  s.time = get<double>(bytes, pos);
  const auto count = get<std::uint32_t>(bytes, pos);
  pos = kSnapshotHeaderBytes;
  const std::size_t per_field = static_cast<std::size_t>(s.n) * s.n;
  if (bytes.size() != kSnapshotHeaderBytes + count * per_field * 8)
    throw std::runtime_error("snapshot: size does not match header");
  s.fields.resize(count);
  for (auto& f : s.fields) {
    f.resize(per_field);
    for (auto& v : f) v = get<double>(bytes, pos);
  }
  return s;
}

Snapshot snapshot_of(const PrimitiveState& state) {
  Snapshot s;
  s.n = static_cast<std::uint32_t>(state.grid().n());
  s.length = state.grid().length();
  s.time = state.time;
  s.fields = {state.rho_pert.to_physical(), state.u[0].to_physical(),
              state.u[1].to_physical(), state.phi.to_physical()};
  return s;
}

PrimitiveState state_from_snapshot(const Snapshot& snap,
                                   const SimulationParams& params) {
  if (snap.fields.size() < 3)
    throw std::runtime_error("snapshot: need at least rho, u1, u2");
  const Grid2D grid(static_cast<int>(snap.n), snap.length);
  auto field = [&](int k) {
    return SpectralField::from_physical(grid, std::span<const double>(snap.fields[k]));
  };
  return PrimitiveState(snap.time, field(0), {field(1), field(2)}, params);
}

void write_file_atomic(const std::string& path, const std::vector<unsigned char>& data) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + tmp + "'");
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::filesystem::rename(tmp, target);
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  write_file_atomic(path, std::vector<unsigned char>(contents.begin(), contents.end()));
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  write_file_atomic(path, encode_snapshot(snap));
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open snapshot '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::ostringstream out;
  out << "# format=1\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open '" + path + "': file not found");
  std::vector<std::pair<double, double>> out;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected two columns");
    try {
      std::size_t ua = 0, ub = 0;
      const double t = std::stod(a, &ua);
      const double v = std::stod(b, &ub);
      out.emplace_back(t, v);
    } catch (const std::exception&) {
      if (header_seen || !out.empty())
        throw ValidationError(path + ":" + std::to_string(lineno) + ": non-numeric row");
      header_seen = true;
    }
  }
  return out;
}

}  // namespace nsp2d
