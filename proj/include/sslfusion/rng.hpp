#pragma once

#include <cstdint>

namespace sslfusion::rng {

// pcg32 (PCG XSH-RR 64/32 with the reference multiplier and seeding
// sequence). The output stream is fixed by the algorithm alone, so a given
// (seed, stream) pair reproduces bit-identical draws on every platform and
// toolchain; nothing is delegated to the standard library's distributions.
//
// Substream scheme: substream k of a seed is Pcg32(seed, k). Distinct
// stream indices select distinct odd increments, giving statistically
// independent sequences, so parallel workers and repeated experiment runs
// each take their own index (run r uses stream r) without coordination.
//
// Gaussian variates use the Marsaglia polar transform on 53-bit uniforms,
// with the spare value cached, so the mapping from the uniform stream to
// the normal stream is itself fixed.
class Pcg32 {
 public:
  Pcg32() : Pcg32(0, 0) {}
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0);

  static Pcg32 substream(std::uint64_t seed, std::uint64_t index) {
    return Pcg32(seed, index);
  }

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double next_double();

  // Uniform integer on [0, bound) without modulo bias. bound must be > 0.
  std::uint32_t next_below(std::uint32_t bound);

  // Standard normal variate.
  double next_normal();
  double next_normal(double mean, double stddev) {
    return mean + stddev * next_normal();
  }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sslfusion::rng
