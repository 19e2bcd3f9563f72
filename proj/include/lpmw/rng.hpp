#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lpmw {

/// Seed-splitting rule used throughout the library: a batch of independent
/// randomized runs derives the seed for run k as `split_seed(base, k)`.
/// Keeping the rule in one place makes every experiment reproducible
/// bit-for-bit across machines.
constexpr std::uint64_t split_seed(std::uint64_t base, std::uint64_t run) noexcept {
  return base ^ run;
}

/// Deterministic 64-bit generator (xoshiro256** seeded through splitmix64).
/// The stream depends only on the seed, never on platform or standard
/// library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept {
    // splitmix64 expansion of the seed into the xoshiro state
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, n). Bitmask rejection, so the result is exactly
  /// uniform and consumes a deterministic portion of the stream.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    if (n == 1) return 0;
    const std::uint64_t mask = mask_for(n - 1);
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

  /// Uniform arbitrary-precision integer in [0, n); exact, by the same
  /// bitmask-rejection scheme over 64-bit words.
  boost::multiprecision::cpp_int below(const boost::multiprecision::cpp_int& n) {
    namespace mp = boost::multiprecision;
    if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
    if (n == 1) return 0;
    const unsigned bits = mp::msb(n - 1) + 1;
    const unsigned words = (bits + 63) / 64;
    const std::uint64_t top_mask = mask_for_bits(bits - 64 * (words - 1));
    for (;;) {
      mp::cpp_int v = 0;
      for (unsigned w = 0; w < words; ++w) {
        std::uint64_t word = next();
        if (w + 1 == words) word &= top_mask;
        v |= mp::cpp_int(word) << (64 * w);
      }
      if (v < n) return v;
    }
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  static std::uint64_t mask_for(std::uint64_t v) noexcept {
    std::uint64_t m = v;
    m |= m >> 1;
    m |= m >> 2;
    m |= m >> 4;
    m |= m >> 8;
    m |= m >> 16;
    m |= m >> 32;
    return m;
  }
  static std::uint64_t mask_for_bits(unsigned bits) noexcept {
    return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
  }

  std::uint64_t state_[4];
};

}  // namespace lpmw
