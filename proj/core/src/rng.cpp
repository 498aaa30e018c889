#include "polytail/rng.hpp"

namespace polytail {
namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t draw) {
  std::uint64_t h = splitmix64(seed ^ 0x5DEECE66D1E88C5Full);
  h = splitmix64(h ^ stream);
  h = splitmix64(h ^ draw);
  return splitmix64(h);
}

}  // namespace polytail
