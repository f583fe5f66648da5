// Copyright 2026 The onebit Authors
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

#include <cstdint>
#include <limits>

namespace onebit {

/// Counter-based generator: output i of a stream is a SplitMix64 finalizer
/// applied to key + i * gamma. Streams are addressed by (seed, a, b) so that
/// work split across threads draws the same numbers regardless of the split.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  /// Independent stream for (seed, a, b), e.g. (master seed, setting, chunk).
  static CounterRng stream(std::uint64_t seed, std::uint64_t a = 0,
                           std::uint64_t b = 0) {
    std::uint64_t k = finalize(seed + kGamma);
    k = finalize(k ^ (a + 0x632be59bd9b4e019ULL));
    k = finalize(k ^ (b + 0x8cb92ba72f3d8dd7ULL));
    return CounterRng(k);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return finalize(key_ + (++counter_) * kGamma); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace onebit
