#include "nsp2d/rng.hpp"

namespace nsp2d {

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  const std::uint64_t key = seed ^ (stream * 0xD1B54A32D192ED03ULL);
  return splitmix64_mix(key + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace nsp2d
