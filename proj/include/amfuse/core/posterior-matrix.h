// core/posterior-matrix.h

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

#ifndef AMFUSE_CORE_POSTERIOR_MATRIX_H_
#define AMFUSE_CORE_POSTERIOR_MATRIX_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "amfuse/core/log-math.h"

namespace amfuse {

// Maximum |logsumexp(row)| accepted for a posterior row.
inline constexpr double kRowNormTolerance = 1e-3;

// T x V grid of per-frame log posteriors, row-major. Every row is validated
// to be a normalized distribution at construction; values are finite.
class PosteriorMatrix {
 public:
  PosteriorMatrix() = default;
  PosteriorMatrix(int32_t num_frames, int32_t num_symbols,
                  std::vector<float> values);

  // Builds from linear-domain rows (each row must sum to one).
  static PosteriorMatrix FromProbabilities(
      const std::vector<std::vector<double>> &rows);

  // Binary "FPM1" format: magic, u32 LE frames, u32 LE symbols, then
  // frames*symbols binary32 LE values, row-major.
  static PosteriorMatrix Read(const std::string &path);
  static PosteriorMatrix Parse(std::span<const char> bytes);
  void Write(const std::string &path) const;
  std::vector<char> Serialize() const;

  int32_t NumFrames() const { return num_frames_; }
  int32_t NumSymbols() const { return num_symbols_; }
  float operator()(int32_t frame, int32_t symbol) const {
    return values_[static_cast<size_t>(frame) * num_symbols_ + symbol];
  }
  std::span<const float> Row(int32_t frame) const {
    return {values_.data() + static_cast<size_t>(frame) * num_symbols_,
            static_cast<size_t>(num_symbols_)};
  }
  const std::vector<float> &Values() const { return values_; }

  bool operator==(const PosteriorMatrix &other) const = default;

 private:
  int32_t num_frames_ = 0;
  int32_t num_symbols_ = 0;
  std::vector<float> values_;
};

}  // namespace amfuse

#endif  // AMFUSE_CORE_POSTERIOR_MATRIX_H_
