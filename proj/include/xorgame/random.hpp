#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace xorgame {

// SplitMix64 (https://prng.di.unimi.it). All randomness in the library flows
// through this engine so that results are bit-identical across platforms;
// std::*_distribution is implementation-defined and is never used.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1].
  double uniform_open0() { return 1.0 - uniform(); }

  bool bit() { return ((*this)() >> 63) != 0; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return (*this)() % n; }

  /// Standard normal via Box-Muller (one value per call; the pair's sine
  /// half is discarded to keep the stream position simple).
  double gaussian() {
    const double u1 = uniform_open0();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace xorgame
