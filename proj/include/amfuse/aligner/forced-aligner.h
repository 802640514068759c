// aligner/forced-aligner.h

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

#ifndef AMFUSE_ALIGNER_FORCED_ALIGNER_H_
#define AMFUSE_ALIGNER_FORCED_ALIGNER_H_

#include <cmath>
#include <vector>

#include "amfuse/aligner/pron-graph.h"
#include "amfuse/core/hypothesis.h"
#include "amfuse/core/lexicon.h"
#include "amfuse/core/posterior-matrix.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

struct AlignOptions {
  // Optional per-phoneme log priors subtracted from every frame posterior
  // (hybrid-style pseudo-likelihoods). Empty means posteriors are used as-is.
  std::vector<double> log_phone_priors;
};

struct Alignment {
  double score = kLogZero;
  std::vector<PhoneId> frame_phones;  // one entry per frame
  std::vector<int32_t> arc_path;      // indices into PronGraph::Arcs()
};

// Viterbi forced alignment without blank: every traversed phoneme occupies
// at least one consecutive frame and all frames are consumed. Maximizes the
// summed frame log-posteriors plus the arc weights of the chosen path.
Alignment ViterbiAlign(const PosteriorMatrix &posteriors, const PronGraph &graph,
                       const AlignOptions &opts = {});

enum class OovPolicy { kStrict, kFloor };

struct AmScoreOptions {
  ExpandOptions expand;
  AlignOptions align;
  OovPolicy oov_policy = OovPolicy::kStrict;
  // Per-frame score charged to hypotheses with OOV words under kFloor.
  double floor_per_frame = std::log(1e-4);
};

// External AM score of a hypothesis: detokenize, expand pronunciations and
// force-align against the phoneme posteriors. Hypotheses that cannot be
// aligned (more phonemes than frames, or no words without a silence model)
// score kLogZero. A leading continuation piece is treated as an OOV word.
double AmScore(const Hypothesis &hyp, const PosteriorMatrix &phone_posteriors,
               const Lexicon &lexicon, const Vocabulary &vocab,
               const AmScoreOptions &opts = {});

// Same, storing the result in hyp->scores.am.
double ScoreHypothesisAm(Hypothesis *hyp, const PosteriorMatrix &phone_posteriors,
                         const Lexicon &lexicon, const Vocabulary &vocab,
                         const AmScoreOptions &opts = {});

}  // namespace amfuse

#endif  // AMFUSE_ALIGNER_FORCED_ALIGNER_H_
