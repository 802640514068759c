// fusion/fusion.h

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

#ifndef AMFUSE_FUSION_FUSION_H_
#define AMFUSE_FUSION_FUSION_H_

#include <string>
#include <vector>

#include "amfuse/aligner/forced-aligner.h"
#include "amfuse/core/hypothesis.h"
#include "amfuse/eval/error-rate.h"
#include "amfuse/ngram/ngram-model.h"

namespace amfuse {

// e2e + w.am * am + w.lm * lm - w.ilm * ilm. Terms with zero weight are
// skipped, so an absent am is fine when w.am == 0; otherwise it is an error.
double FuseScores(const ScoreBundle &scores, const FusionWeights &weights);

// Stable re-sort, best fused score first.
void SortByFusedScore(NBestList *nbest, const FusionWeights &weights);

// Second pass: fills in the am score of every hypothesis by forced
// alignment and re-ranks by the fused score. Other components are untouched.
NBestList RescoreNBest(const NBestList &nbest,
                       const PosteriorMatrix &phone_posteriors,
                       const Lexicon &lexicon, const Vocabulary &vocab,
                       const FusionWeights &weights,
                       const AmScoreOptions &options = {});

// Replaces the lm slot with a word-level LM score of the detokenized
// hypothesis (</s> included), for second-pass LM rescoring.
NBestList ApplyWordLm(const NBestList &nbest, const NGramModel &word_lm,
                      const Vocabulary &vocab, const NGramOptions &opts = {});

// The ILM-negation weights whose ranking matches AM fusion with `weights`
// when am == e2e - ilm: (0, lm / (1 + am), am / (1 + am)). Requires
// weights.ilm == 0.
FusionWeights EquivalentLmWeights(const FusionWeights &weights);

struct DevUtterance {
  NBestList nbest;
  WordSequence reference;
};

struct TuneResult {
  FusionWeights best;
  double wer = 0.0;
  std::vector<std::pair<FusionWeights, double>> report;  // grid order
};

// Picks the grid point with the lowest corpus WER after re-ranking every
// dev N-best list. Ties go to the lexicographically smaller weights.
TuneResult TuneWeights(const std::vector<DevUtterance> &dev,
                       const std::vector<FusionWeights> &grid,
                       const Vocabulary &vocab);

struct GridSpec {
  double step = 0.1;
  double max = 1.0;
  bool tune_am = true;
  bool tune_lm = true;
  bool tune_ilm = true;
  int max_nonzero = 2;
  // Value used for axes that are not tuned.
  FusionWeights fixed;
};
std::vector<FusionWeights> MakeGrid(const GridSpec &spec);

// "lambda_am\tlambda_lm\tlambda_ilm\twer" per grid point.
void WriteTuneReport(const std::string &path, const TuneResult &result);

}  // namespace amfuse

#endif  // AMFUSE_FUSION_FUSION_H_
