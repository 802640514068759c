// decoder/ctc-forward.cc

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

#include <vector>

#include "amfuse/decoder/ctc-prefix-beam-search.h"

namespace amfuse {

double CtcLabelLogProb(const PosteriorMatrix &posteriors,
                       const TokenSequence &labels) {
  const int32_t num_frames = posteriors.NumFrames();
  const int32_t num_symbols = posteriors.NumSymbols();
  int32_t required = static_cast<int32_t>(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] <= kBlankId || labels[i] >= num_symbols) {
      throw Error("invalid CTC label id " + std::to_string(labels[i]));
    }
    if (i > 0 && labels[i] == labels[i - 1]) ++required;
  }
  if (required > num_frames) throw Error("sequence too long to align");

  // Extended sequence: blank, l1, blank, l2, ..., blank.
  const size_t ext = 2 * labels.size() + 1;
  auto symbol = [&](size_t s) { return s % 2 == 0 ? kBlankId : labels[s / 2]; };
  std::vector<double> alpha(ext, kLogZero), next(ext, kLogZero);
  alpha[0] = posteriors(0, kBlankId);
  if (ext > 1) alpha[1] = posteriors(0, symbol(1));
  for (int32_t t = 1; t < num_frames; ++t) {
    for (size_t s = 0; s < ext; ++s) {
      double acc = alpha[s];
      if (s >= 1) acc = LogAdd(acc, alpha[s - 1]);
      if (s >= 2 && s % 2 == 1 && symbol(s) != symbol(s - 2)) {
        acc = LogAdd(acc, alpha[s - 2]);
      }
      next[s] = acc == kLogZero ? kLogZero : acc + posteriors(t, symbol(s));
    }
    alpha.swap(next);
  }
  return ext > 1 ? LogAdd(alpha[ext - 1], alpha[ext - 2]) : alpha[0];
}

}  // namespace amfuse
