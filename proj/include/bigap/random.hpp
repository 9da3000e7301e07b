#pragma once

// Deterministic random streams.
//
// A stream for trial k of an experiment seeded with s is xoshiro256** whose
// 256-bit state is filled by four SplitMix64 steps starting from
//   splitmix64_mix(s + k * 0x9E3779B97F4A7C15).
// Both algorithms are fixed here so that results are reproducible bit for bit.

#include <array>
#include <cstdint>
#include <limits>

namespace bigap {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr result_type operator()() noexcept {
    state_ += golden_gamma;
    return splitmix64_mix(state_);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t state_;
};

struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;

  // 64-bit value the trial stream is seeded from; also what the CSV reports.
  constexpr std::uint64_t derived_seed() const noexcept {
    return splitmix64_mix(master_seed + trial_index * golden_gamma);
  }
};

// xoshiro256** 1.0 (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
// Move-only: a stream has one owner.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm();
  }

  // Raw xoshiro state; must not be all zero.
  static RandomStream from_state(std::array<std::uint64_t, 4> const& state) noexcept {
    RandomStream r(0);
    r.s_ = state;
    return r;
  }

  RandomStream(RandomStream const&) = delete;
  RandomStream& operator=(RandomStream const&) = delete;
  RandomStream(RandomStream&&) noexcept = default;
  RandomStream& operator=(RandomStream&&) noexcept = default;

  result_type operator()() noexcept {
    std::uint64_t const result = rotl(s_[1] * 5, 7) * 9;
    std::uint64_t const t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_open_closed() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

inline RandomStream derive_stream(SeedSpec const& spec) noexcept {
  return RandomStream(spec.derived_seed());
}

}  // namespace bigap
