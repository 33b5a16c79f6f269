#pragma once

// Deterministic PRNG used everywhere randomness is needed.
//
// std::mt19937_64 itself is portable but the standard distributions are not,
// so reports seeded identically could differ across standard libraries.  We
// use xoshiro256** seeded through splitmix64 and Lemire's bounded sampler;
// identical seeds give identical streams on every platform.

#include <array>
#include <cstdint>

namespace sgap {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform value in [0, bound), bound >= 1.  Lemire's method with rejection.
  std::uint64_t bounded(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      const std::uint64_t x = next();
      const unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  // Signed value in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

// Deterministic sub-seed derivation: children of one master seed, separated
// by a small tag so independent pipeline stages get independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  std::uint64_t sm = master ^ (0xa0761d6478bd642fULL + tag * 0xe7037ed1a0b428dbULL);
  std::uint64_t a = splitmix64(sm);
  std::uint64_t b = splitmix64(sm);
  return a ^ (b << 1);
}

}  // namespace sgap
