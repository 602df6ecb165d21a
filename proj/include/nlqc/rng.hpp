// Copyright 2026 the nlqc-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace nlqc {

/// Counter-based pseudo-random generator built on the splitmix64 finalizer.
///
/// The generator is deliberately tiny and fully specified so that campaigns
/// are reproducible bit-for-bit on one platform and reproducible at the level
/// of recorded substream seeds everywhere else. Sample i of a campaign uses
/// the substream seed mix(seed, i), which makes per-sample evaluation order
/// independent. The mixing constants are documented in the README.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  /// Substream seed for sample `index` of a campaign seeded with `seed`.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix(seed, index));
  }

  std::uint64_t next_u64();

  /// 53-bit uniform double in [0, 1).
  double next_double();

  /// Standard normal deviate. Box-Muller on 53-bit uniforms; deviates are
  /// produced in pairs and the second of a pair is cached, so the consumed
  /// uniform stream depends only on the number of calls.
  double next_gaussian();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace nlqc
