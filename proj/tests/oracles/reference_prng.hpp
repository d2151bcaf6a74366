#pragma once

// Transcription of the public-domain C reference generators (splitmix64.c
// and xoshiro256starstar.c by Blackman and Vigna), kept free of any
// library code so tests can check the library against it.

#include <cstdint>

namespace oracle {

struct SplitMix64 {
  uint64_t x;
  uint64_t next() {
    uint64_t z = (x += 0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
    z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
    return z ^ (z >> 31);
  }
};

struct Xoshiro256StarStar {
  uint64_t s[4];

  static inline uint64_t rotl(const uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t next() {
    const uint64_t result = rotl(s[1] * 5, 7) * 9;
    const uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    return result;
  }

  static Xoshiro256StarStar seeded(uint64_t seed) {
    SplitMix64 sm{seed};
    Xoshiro256StarStar g{{sm.next(), sm.next(), sm.next(), sm.next()}};
    if ((g.s[0] | g.s[1] | g.s[2] | g.s[3]) == 0) g.s[0] = 1;
    return g;
  }
};

}  // namespace oracle
