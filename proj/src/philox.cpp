#include "ndpo/philox.hpp"

#include <cmath>
#include <numbers>

namespace ndpo {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

// (0, 1) with 53 random bits.
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint32_t trajectory, std::uint32_t generation)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      trajectory_(trajectory),
      generation_(generation) {}

PhiloxCounter NormalStream::block() {
  const PhiloxCounter counter{static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
                              trajectory_, generation_};
  ++draw_;
  return philox4x32(counter, key_);
}

std::array<double, 4> NormalStream::next4() {
  std::array<double, 4> out;
  for (int half = 0; half < 2; ++half) {
    const PhiloxCounter b = block();
    const double u1 = to_open_unit(b[0], b[1]);
    const double u2 = to_open_unit(b[2], b[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out[2 * half] = radius * std::cos(angle);
    out[2 * half + 1] = radius * std::sin(angle);
  }
  return out;
}

double NormalStream::next_uniform() {
  const PhiloxCounter b = block();
  return to_open_unit(b[0], b[1]);
}

}  // namespace ndpo
