// synth/random.h

// Copyright 2026  amfuse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AMFUSE_SYNTH_RANDOM_H_
#define AMFUSE_SYNTH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace amfuse {

uint64_t SplitMix64(uint64_t x);

// Seed for an independent stream identified by `tag` (and an optional
// index), mixed from a base seed with SplitMix64 over FNV-1a of the tag.
uint64_t DeriveSeed(uint64_t seed, std::string_view tag, uint64_t index = 0);

// Portable random stream: std::mt19937_64 (whose output sequence the
// standard fixes) with integer-to-real conversions done here rather than
// by the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  // Uniform on the open interval (0, 1), 53-bit resolution.
  double Uniform01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }
  // Uniform integer in [lo, hi].
  int64_t UniformInt(int64_t lo, int64_t hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int64_t>(engine_() % span);
  }
  bool Bernoulli(double p) { return Uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace amfuse

#endif  // AMFUSE_SYNTH_RANDOM_H_
