// Copyright 2026 The Shadowrem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace shadowrem {

/// Fibonacci XOR linear feedback shift register. The register shifts left
/// one bit per step; the feedback bit is the XOR of the tapped positions
/// (1-indexed from the LSB, so tap W is the MSB). The default width-16
/// configuration with taps {16, 15, 13, 4} is maximal length (period
/// 2^16 - 1). One output word advances the register by `width` steps and
/// returns the full register contents, so consecutive words share no bits.
class Lfsr {
 public:
  static constexpr int kDefaultWidth = 16;
  static constexpr std::array<int, 4> kDefaultTaps{16, 15, 13, 4};

  explicit Lfsr(std::uint32_t seed) : Lfsr(seed, kDefaultWidth, {kDefaultTaps.begin(), kDefaultTaps.end()}) {}

  Lfsr(std::uint32_t seed, int width, const std::vector<int>& taps) : width_(width) {
    if (width < 2 || width > 32) throw std::invalid_argument("Lfsr width must be in [2, 32]");
    mask_ = (width == 32) ? 0xFFFFFFFFu : ((1u << width) - 1u);
    if ((seed & mask_) == 0) throw std::invalid_argument("Lfsr seed must be nonzero");
    state_ = seed & mask_;
    tap_mask_ = 0;
    for (int t : taps) {
      if (t < 1 || t > width) throw std::invalid_argument("Lfsr tap out of range");
      tap_mask_ |= 1u << (t - 1);
    }
    if (tap_mask_ == 0) throw std::invalid_argument("Lfsr needs at least one tap");
  }

  /// One left shift; returns the new state.
  std::uint32_t step() {
    const std::uint32_t fb = parity(state_ & tap_mask_);
    state_ = ((state_ << 1) | fb) & mask_;
    return state_;
  }

  /// Advances `width` steps and returns the refreshed register contents.
  std::uint32_t next_word() {
    for (int i = 0; i < width_; ++i) step();
    return state_;
  }

  /// next_word() scaled to [0, 1).
  double next_unit() {
    return static_cast<double>(next_word()) / static_cast<double>(mask_ + std::uint64_t(1));
  }

  std::uint32_t state() const { return state_; }
  int width() const { return width_; }
  std::uint64_t word_range() const { return std::uint64_t(mask_) + 1; }

 private:
  static std::uint32_t parity(std::uint32_t v) {
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return v & 1u;
  }

  std::uint32_t state_;
  std::uint32_t mask_;
  std::uint32_t tap_mask_;
  int width_;
};

/// Functional step used by replay tooling: returns the advanced register
/// and its output word without mutating the argument.
inline std::pair<Lfsr, std::uint32_t> lfsr_next(Lfsr g) {
  const std::uint32_t w = g.next_word();
  return {g, w};
}

}  // namespace shadowrem
