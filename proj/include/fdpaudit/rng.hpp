// Copyright 2026 The fdpaudit Authors
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

#ifndef FDPAUDIT_RNG_HPP_
#define FDPAUDIT_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace fdpaudit {

// SplitMix64: a 64-bit counter-based generator (Steele, Lea & Flood 2014).
// The state advances by a fixed odd constant and each output is a bijective
// mix of the counter, so streams seeded from distinct values never share a
// sequence prefix.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in (0, 1).
  double NextUnit() {
    return (static_cast<double>(Next() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool NextBit() { return (Next() & 1ULL) != 0; }

 private:
  std::uint64_t state_;
};

// Deterministic per-stream seed: a fixed 64-bit mix of (master, stream).
inline std::uint64_t DeriveStreamSeed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 mixer(master ^ (stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL));
  return mixer.Next();
}

// Standard normal variates by the Box-Muller transform, one cached per pair.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

  double Next() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = rng_.NextUnit();
    double u2 = rng_.NextUnit();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * kPi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
  }

  SplitMix64& bits() { return rng_; }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  SplitMix64 rng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace fdpaudit

#endif  // FDPAUDIT_RNG_HPP_
