#include "sslfusion/rng.hpp"

#include <cmath>

namespace sslfusion::rng {

namespace {
constexpr std::uint64_t kMultiplier = 6364136223846793005ull;
}

Pcg32::Pcg32(std::uint64_t seed, std::uint64_t stream) {
  // Reference seeding: run the LCG once from zero state, add the seed,
  // then advance once more so the first output already mixes both.
  inc_ = (stream << 1u) | 1u;
  state_ = 0u;
  next_u32();
  state_ += seed;
  next_u32();
}

std::uint32_t Pcg32::next_u32() {
  const std::uint64_t old = state_;
  state_ = old * kMultiplier + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

std::uint64_t Pcg32::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  return (hi << 32) | lo;
}

double Pcg32::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t Pcg32::next_below(std::uint32_t bound) {
  // Lemire-style rejection: keep the low word of the 64-bit product
  // unbiased by discarding the short leading range.
  const std::uint32_t threshold = (0u - bound) % bound;
  for (;;) {
    const std::uint64_t product =
        static_cast<std::uint64_t>(next_u32()) * static_cast<std::uint64_t>(bound);
    if (static_cast<std::uint32_t>(product) >= threshold) {
      return static_cast<std::uint32_t>(product >> 32);
    }
  }
}

double Pcg32::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * next_double() - 1.0;
    v = 2.0 * next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

}  // namespace sslfusion::rng
