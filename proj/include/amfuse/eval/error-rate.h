// eval/error-rate.h

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

#ifndef AMFUSE_EVAL_ERROR_RATE_H_
#define AMFUSE_EVAL_ERROR_RATE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "amfuse/core/hypothesis.h"
#include "amfuse/core/text-utils.h"

namespace amfuse {

struct ErrorCounts {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t ref_length = 0;

  int64_t Errors() const { return substitutions + deletions + insertions; }
  // (S + D + I) / N; throws Error when N == 0.
  double Wer() const;
  ErrorCounts &operator+=(const ErrorCounts &o);
  bool operator==(const ErrorCounts &) const = default;
};

// Minimal unit-cost edit alignment of hyp against ref. Among minimal
// alignments the one with the most substitutions is counted, which fixes
// D and I and makes the counts symmetric under swapping ref and hyp. An
// empty reference is allowed (all insertions).
ErrorCounts AlignErrors(const WordSequence &ref, const WordSequence &hyp);

// Single-pair WER counts; throws Error on an empty reference.
ErrorCounts WordErrors(const WordSequence &ref, const WordSequence &hyp);

// Detokenized, normalized words of a hypothesis. A leading continuation
// piece counts as a word of its own.
WordSequence HypothesisWords(const Hypothesis &hyp, const Vocabulary &vocab);

struct OracleResult {
  ErrorCounts counts;
  size_t index = 0;  // rank of the chosen hypothesis (0 = top)
};
// Hypothesis with the fewest errors; ties go to the higher-ranked one.
OracleResult OracleErrors(const NBestList &nbest, const WordSequence &ref,
                          const Vocabulary &vocab);

// Relative WER reduction (baseline - updated) / baseline.
double Werr(double baseline_wer, double new_wer);

struct UtteranceScore {
  std::string utt_id;
  ErrorCounts counts;
};
// "utt_id\tS\tD\tI\tN\twer" per utterance.
void WriteScoreReport(const std::string &path,
                      const std::vector<UtteranceScore> &scores);

}  // namespace amfuse

#endif  // AMFUSE_EVAL_ERROR_RATE_H_
