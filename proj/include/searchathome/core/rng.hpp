#pragma once

// Deterministic PRNG shared by every search algorithm.
//
// xoshiro256** seeded through splitmix64, following the public-domain
// reference implementations by Sebastiano Vigna and David Blackman.
// The generator is a plain value: copy it to fork a stream, compare it to
// check that two runs consumed the same draws.

#include <array>
#include <cstdint>
#include <stdexcept>

namespace searchathome {

struct SplitMixStep {
  std::uint64_t value;
  std::uint64_t next_state;
};

constexpr SplitMixStep splitmix64_next(std::uint64_t state) noexcept {
  const std::uint64_t next = state + 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = next;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {z ^ (z >> 31), next};
}

class Rng {
 public:
  using result_type = std::uint64_t;
  using State = std::array<std::uint64_t, 4>;

  constexpr explicit Rng(std::uint64_t seed) noexcept : s_{} {
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      const auto step = splitmix64_next(sm);
      word = step.value;
      sm = step.next_state;
    }
    if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) s_[0] = 1;
  }

  constexpr static Rng from_state(const State& state) noexcept {
    Rng r(0);
    r.s_ = state;
    return r;
  }

  constexpr const State& state() const noexcept { return s_; }

  // Number of 64-bit draws consumed since seeding.
  constexpr std::uint64_t draws() const noexcept { return draws_; }

  constexpr std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    ++draws_;
    return result;
  }

  // Uniform value in [0, n) by modulo reduction. One draw.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    return next_u64() % n;
  }

  // Uniform double in [0, 1) from the top 53 bits. One draw.
  constexpr double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // UniformRandomBitGenerator surface.
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept { return next_u64(); }

  friend constexpr bool operator==(const Rng& a, const Rng& b) noexcept {
    return a.s_ == b.s_;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  State s_;
  std::uint64_t draws_ = 0;
};

}  // namespace searchathome
