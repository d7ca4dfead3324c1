#pragma once

#include <cmath>
#include <cstdint>

namespace quadsgd {

// Deterministic, self-contained PRNG stack. Everything is implemented here
// bit-for-bit (no std::mt19937, no libc rand) so that a (seed, draw-order)
// pair reproduces the same stream on every platform and compiler.

// splitmix64: tiny generator used for seed mixing and for expanding one
// 64-bit seed into a larger state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Mix a handful of 64-bit words into one seed. Order-sensitive: feeding the
// words in a different order produces an unrelated value.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 sm(a ^ 0x8f1bbcdc2b57d5c5ULL);
  std::uint64_t h = sm.next();
  SplitMix64 sm2(h ^ b);
  return sm2.next();
}

// xoshiro256++ by Blackman and Vigna: fast, 256-bit state, passes BigCrush.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& s : state_) s = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in (0, 1]: never returns 0, safe to pass to log().
  double uniform01_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Standard normal draws via the Marsaglia polar method, with the spare
// deviate cached between calls. Output is always finite: the squared radius
// s is at least 2^-104 on the uniform grid, so |z| <= sqrt(-2 log s) < 12.1.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * gen_.uniform01() - 1.0;
      v = 2.0 * gen_.uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  Xoshiro256pp& raw() { return gen_; }

 private:
  Xoshiro256pp gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace quadsgd
