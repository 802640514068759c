// eval/ppl-buckets.h

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

#ifndef AMFUSE_EVAL_PPL_BUCKETS_H_
#define AMFUSE_EVAL_PPL_BUCKETS_H_

#include <ostream>
#include <string>
#include <vector>

#include "amfuse/eval/error-rate.h"
#include "amfuse/ngram/ngram-model.h"

namespace amfuse {

struct BucketItem {
  WordSequence reference;
  WordSequence baseline;
  WordSequence fused;
};

struct BucketStats {
  size_t size = 0;
  double mean_ppl = 0.0;
  ErrorCounts baseline;
  ErrorCounts fused;
  // NaN when the bucket's baseline WER is zero.
  double werr = 0.0;
};

// Sorts utterances by reference perplexity under `bucket_lm` (stable, so
// equal perplexities keep input order), cuts them into k contiguous buckets
// whose sizes differ by at most one (the first size % k buckets get the extra
// item) and reports per-bucket corpus WERs and WERR. With `token_vocab` set,
// references are scored as greedy wordpiece segmentations of their words.
std::vector<BucketStats> PplBuckets(const std::vector<BucketItem> &corpus,
                                    const NGramModel &bucket_lm, int k,
                                    const Vocabulary *token_vocab = nullptr,
                                    const NGramOptions &opts = {});

// Perplexity of one reference as used for bucketing.
double ReferencePerplexity(const WordSequence &reference,
                           const NGramModel &bucket_lm,
                           const Vocabulary *token_vocab,
                           const NGramOptions &opts = {});

// "bucket\tmean_ppl\tbaseline_wer\tfused_wer\twerr".
void WriteBucketReport(std::ostream &out,
                       const std::vector<BucketStats> &buckets);
void WriteBucketReport(const std::string &path,
                       const std::vector<BucketStats> &buckets);

}  // namespace amfuse

#endif  // AMFUSE_EVAL_PPL_BUCKETS_H_
