#pragma once

#include <cstdint>
#include <limits>

namespace rgr {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used to expand a 64-bit seed into engine state and
/// to derive independent child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of `parent`. Pure function of its inputs, so
/// trial i sees the same stream no matter which thread runs it or in what
/// order trials complete.
constexpr Seed derive_seed(Seed parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// xoshiro256** engine. Satisfies std::uniform_random_bit_generator so it
/// plugs into the standard distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) noexcept { return unit() < p; }

 private:
  std::uint64_t s_[4];
};

}  // namespace rgr
