// Copyright 2026 The unlearn-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// Every draw is a pure function of (seed, stream, index), so blocks of a
// scenario can be generated in any order without changing their contents.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace unlearn_lab {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
};

/// Named stream of a seeded Philox generator. Draw i is independent of
/// which other draws were made before it.
class CounterStream {
 public:
  constexpr CounterStream(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// Two 53-bit uniforms in [0, 1) from one Philox block.
  std::array<double, 2> uniform_pair(std::uint64_t index) const {
    const auto out = Philox4x32::block(
        {static_cast<std::uint32_t>(index),
         static_cast<std::uint32_t>(index >> 32),
         static_cast<std::uint32_t>(stream_),
         static_cast<std::uint32_t>(stream_ >> 32)},
        key_);
    const std::uint64_t a = (std::uint64_t{out[0]} << 32) | out[1];
    const std::uint64_t b = (std::uint64_t{out[2]} << 32) | out[3];
    constexpr double kScale = 0x1.0p-53;
    return {static_cast<double>(a >> 11) * kScale,
            static_cast<double>(b >> 11) * kScale};
  }

  double uniform(std::uint64_t index) const { return uniform_pair(index)[0]; }

  /// Uniform on (-1, 1).
  double uniform_symmetric(std::uint64_t index) const {
    return 2.0 * uniform(index) - 1.0;
  }

  /// Standard normal via the cosine branch of Box-Muller.
  double normal(std::uint64_t index) const {
    const auto [u1, u2] = uniform_pair(index);
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));  // 1 - u1 in (0, 1]
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
};

}  // namespace unlearn_lab
