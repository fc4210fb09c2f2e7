#pragma once
// Deterministic replicate-indexed randomness. A (seed, stream) pair is mixed
// by splitmix64 into xoshiro256++ state; normals come from Box-Muller over
// 53-bit uniforms. Every transform is fixed and documented, so identical
// (seed, stream) pairs reproduce identical draw sequences in any build of
// this library. Distinct streams are statistically independent generators,
// which is what makes replicate-per-stream simulation thread-order immune.

#include <array>
#include <cstdint>

namespace bostat {

struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // replicate index
};

class Rng {
 public:
  explicit Rng(RngSpec spec);

  std::uint64_t next_u64();  // xoshiro256++ word
  double next_unit();        // uniform on (0,1), never exactly 0 or 1
  double next_gaussian();    // standard normal (Box-Muller, pair cached)
  double next_sign();        // Rademacher +-1

 private:
  std::array<std::uint64_t, 4> s_{};
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace bostat
