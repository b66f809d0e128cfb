#pragma once

#include <cstdint>

namespace nsp2d {

/// SplitMix64 output function.
std::uint64_t splitmix64_mix(std::uint64_t x);

/// Stateless generator: value(seed, stream, counter) =
/// mix(seed ^ (stream * 0xD1B54A32D192ED03) + (counter + 1) * 0x9E3779B97F4A7C15).
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter);

/// Sequential view of one (seed, stream) pair.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return counter_bits(seed_, stream_, counter_++); }
  /// Top 53 bits scaled to [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace nsp2d
