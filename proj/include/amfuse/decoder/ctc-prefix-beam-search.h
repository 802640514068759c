// decoder/ctc-prefix-beam-search.h

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

#ifndef AMFUSE_DECODER_CTC_PREFIX_BEAM_SEARCH_H_
#define AMFUSE_DECODER_CTC_PREFIX_BEAM_SEARCH_H_

#include <string>
#include <vector>

#include "amfuse/core/hypothesis.h"
#include "amfuse/core/posterior-matrix.h"
#include "amfuse/core/vocabulary.h"
#include "amfuse/ngram/ngram-model.h"

namespace amfuse {

// First-pass search configuration. The models are borrowed and must outlive
// the decoder. weights.am is ignored in the first pass.
struct BeamConfig {
  int beam_width = 10;
  int n_best = 10;
  FusionWeights weights;
  const NGramModel *lm = nullptr;
  const NGramModel *ilm = nullptr;
  NGramOptions lm_options;

  void Validate() const;
};

// CTC prefix beam search with shallow fusion of an external token LM and
// subtraction of an internal-LM estimate. A prefix is ranked by
//   logsumexp(blank-ending, nonblank-ending) + w_lm * lm - w_ilm * ilm,
// where the LM terms are accumulated once per emitted token (never on blank
// or on a collapsed repeat). Beams are cut to the top beam_width prefixes
// after every frame; equal scores are ordered by the lexicographically
// smaller token sequence.
class CtcPrefixBeamSearch {
 public:
  CtcPrefixBeamSearch(const Vocabulary &vocab, BeamConfig config);

  NBestList Decode(const PosteriorMatrix &posteriors,
                   const std::string &utt_id) const;

  const BeamConfig &Config() const { return config_; }

 private:
  double Fused(double e2e, double lm, double ilm) const;

  const Vocabulary &vocab_;
  BeamConfig config_;
  // CTC token id -> model word id (-1 for blank).
  std::vector<int32_t> lm_ids_;
  std::vector<int32_t> ilm_ids_;
};

// Exact log P_ctc(labels | posteriors): the forward algorithm over all
// alignments that collapse to `labels`. Blank is id 0.
double CtcLabelLogProb(const PosteriorMatrix &posteriors,
                       const TokenSequence &labels);

}  // namespace amfuse

#endif  // AMFUSE_DECODER_CTC_PREFIX_BEAM_SEARCH_H_
