#pragma once

#include <array>
#include <cstdint>

namespace ndpo {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Standard normal draws for one (seed, trajectory, generation) stream. Each
// call to next4 consumes two Philox blocks, so the i-th quadruple depends only
// on the stream identity and i.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint32_t trajectory, std::uint32_t generation);

  std::array<double, 4> next4();
  // Uniform in (0, 1).
  double next_uniform();

 private:
  PhiloxCounter block();

  PhiloxKey key_;
  std::uint32_t trajectory_;
  std::uint32_t generation_;
  std::uint64_t draw_ = 0;
};

}  // namespace ndpo
