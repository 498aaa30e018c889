#pragma once

#include <cstdint>

namespace polytail {

// Stateless counter-based mixing: the value at (seed, stream, draw) is a pure
// function of the triple, so any parallel schedule reproduces the same draws.
std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t draw);

class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return counter_mix(seed_, stream_, draw_++); }

  // Uniform on the open interval (0,1); never returns 0 or 1.
  double next_unit() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
};

}  // namespace polytail
