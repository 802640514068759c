// core/hypothesis.h

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

#ifndef AMFUSE_CORE_HYPOTHESIS_H_
#define AMFUSE_CORE_HYPOTHESIS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "amfuse/core/log-math.h"
#include "amfuse/core/text-utils.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

// Component log-scores of one hypothesis. `am` stays empty until the
// second pass has force-aligned the hypothesis.
struct ScoreBundle {
  double e2e = 0.0;
  double lm = 0.0;
  double ilm = 0.0;
  std::optional<double> am;

  bool operator==(const ScoreBundle &) const = default;
};

struct Hypothesis {
  TokenSequence tokens;
  ScoreBundle scores;

  bool operator==(const Hypothesis &) const = default;
};

struct NBestList {
  std::string utt_id;
  std::vector<Hypothesis> hypotheses;  // best first

  bool operator==(const NBestList &) const = default;
};

// Log-linear interpolation weights, all finite and non-negative.
struct FusionWeights {
  double am = 0.0;
  double lm = 0.0;
  double ilm = 0.0;

  void Validate() const;
  bool operator==(const FusionWeights &) const = default;
  auto operator<=>(const FusionWeights &) const = default;
};

// Checks list invariants: non-empty, at most `max_size` entries (when
// positive), valid non-blank token ids, no duplicate token sequences.
void ValidateNBest(const NBestList &nbest, const Vocabulary &vocab,
                   size_t max_size = 0);

// N-best file: one line per hypothesis,
// "utt_id\trank\te2e\tlm\tilm\tam\ttext" with "NA" for an absent am and
// text being the space-joined token symbols. Lists appear in file order.
void WriteNBest(std::ostream &out, const NBestList &nbest,
                const Vocabulary &vocab);
void WriteNBestFile(const std::string &path,
                    const std::vector<NBestList> &lists,
                    const Vocabulary &vocab);
std::vector<NBestList> ReadNBestFile(const std::string &path,
                                     const Vocabulary &vocab);

}  // namespace amfuse

#endif  // AMFUSE_CORE_HYPOTHESIS_H_
