#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace juntalab {

/// Counter-based pseudorandom generator (SplitMix64 in counter mode).
/// Output i is a fixed bijective mix of (key + i * gamma), so substreams
/// derived from (seed, stream) are independent of evaluation order and
/// safe to hand to parallel workers. All experiment randomness in this
/// project flows through this generator so runs are replayable from a
/// recorded 64-bit seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Key for a named substream of a master seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    return mix(seed + mix(stream + kGolden));
  }

  std::uint64_t next_u64() {
    counter_ += kGolden;
    return mix(key_ + counter_);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// Uniform integer in [0, bound), unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
    std::uint64_t x = next_u64();
    while (x < min) x = next_u64();
    return x % bound;
  }

  /// Standard normal variate (Box-Muller; second value cached).
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace juntalab
