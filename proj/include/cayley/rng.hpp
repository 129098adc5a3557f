#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace cayley {

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by (seed, stream id); the draw index is the low
/// half of the counter. Any draw of any stream can be computed without
/// touching another stream, so per-trial streams are independent of the
/// order in which trials execute.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        counter_{0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (used_ == 4) {
      block_ = round10(counter_, key_);
      if (++counter_[0] == 0) ++counter_[1];
      used_ = 0;
    }
    return block_[used_++];
  }

  /// Uniform double in (0, 1), 53 random bits.
  double uniform() noexcept {
    const std::uint64_t hi = (*this)() >> 5;  // 27 bits
    const std::uint64_t lo = (*this)() >> 6;  // 26 bits
    return (static_cast<double>((hi << 26) | lo) + 0.5) * 0x1.0p-53;
  }

  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  /// The raw bijection: ten Philox rounds of `ctr` under `key`.
  static Block round10(Block ctr, Key key) noexcept {
    constexpr std::uint32_t kMul0 = 0xD2511F53, kMul1 = 0xCD9E8D57;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9, kWeyl1 = 0xBB67AE85;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  Key key_;
  Block counter_;
  Block block_{};
  int used_ = 4;
};

/// Standard normal draws via Box-Muller; unlike std::normal_distribution the
/// output sequence is fixed across standard library implementations.
class NormalSampler {
 public:
  explicit NormalSampler(Philox4x32 engine) noexcept : engine_(engine) {}

  double operator()() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(engine_.uniform()));
    const double angle = 2.0 * std::numbers::pi * engine_.uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Complex Gaussian with independent standard real and imaginary parts.
  std::complex<double> complex() noexcept {
    const double re = (*this)();
    const double im = (*this)();
    return {re, im};
  }

  Philox4x32& engine() noexcept { return engine_; }

 private:
  Philox4x32 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream ids used across the library so that distinct purposes never share
/// a stream under the same master seed.
namespace streams {
inline constexpr std::uint64_t kTrialBase = 0;
inline constexpr std::uint64_t kPurposeShift = 40;
inline constexpr std::uint64_t kIrrepCoefficients = 1ULL << kPurposeShift;
inline constexpr std::uint64_t kNormStart = 2ULL << kPurposeShift;
inline constexpr std::uint64_t kSearch = 3ULL << kPurposeShift;
inline constexpr std::uint64_t kSweepRow = 4ULL << kPurposeShift;
}  // namespace streams

/// Mixes (seed, index) into a fresh 64-bit seed (SplitMix64 finalizer).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cayley
