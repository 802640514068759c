// eval/ppl-buckets.cc

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

#include "amfuse/eval/ppl-buckets.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

namespace amfuse {

double ReferencePerplexity(const WordSequence &reference,
                           const NGramModel &bucket_lm,
                           const Vocabulary *token_vocab,
                           const NGramOptions &opts) {
  if (token_vocab == nullptr) return bucket_lm.Perplexity(reference, opts);
  std::vector<std::string> pieces;
  for (TokenId id : GreedyTokenize(reference, *token_vocab)) {
    pieces.push_back(token_vocab->Symbol(id));
  }
  return bucket_lm.Perplexity(pieces, opts);
}

std::vector<BucketStats> PplBuckets(const std::vector<BucketItem> &corpus,
                                    const NGramModel &bucket_lm, int k,
                                    const Vocabulary *token_vocab,
                                    const NGramOptions &opts) {
  if (k < 1) throw Error("bucket count must be >= 1");
  if (corpus.size() < static_cast<size_t>(k)) {
    throw Error("corpus smaller than bucket count");
  }
  std::vector<double> ppl(corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    ppl[i] = ReferencePerplexity(corpus[i].reference, bucket_lm, token_vocab, opts);
  }
  std::vector<size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return ppl[a] < ppl[b]; });

  std::vector<BucketStats> buckets(k);
  const size_t base = corpus.size() / k, extra = corpus.size() % k;
  size_t pos = 0;
  for (int b = 0; b < k; ++b) {
    auto &stats = buckets[b];
    stats.size = base + (static_cast<size_t>(b) < extra ? 1 : 0);
    double ppl_sum = 0.0;
    for (size_t n = 0; n < stats.size; ++n, ++pos) {
      const auto &item = corpus[order[pos]];
      ppl_sum += ppl[order[pos]];
      stats.baseline += AlignErrors(item.reference, item.baseline);
      stats.fused += AlignErrors(item.reference, item.fused);
    }
    stats.mean_ppl = ppl_sum / static_cast<double>(stats.size);
    if (stats.baseline.ref_length > 0 && stats.baseline.Errors() > 0) {
      stats.werr = Werr(stats.baseline.Wer(), stats.fused.Wer());
    } else {
      stats.werr = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return buckets;
}

void WriteBucketReport(std::ostream &out,
                       const std::vector<BucketStats> &buckets) {
  char line[256];
  for (size_t b = 0; b < buckets.size(); ++b) {
    const auto &s = buckets[b];
    char werr[32];
    if (std::isnan(s.werr)) {
      std::snprintf(werr, sizeof(werr), "NA");
    } else {
      std::snprintf(werr, sizeof(werr), "%.4f", s.werr);
    }
    std::snprintf(line, sizeof(line), "%zu\t%.4f\t%.4f\t%.4f\t%s\n", b, s.mean_ppl,
                  s.baseline.Wer(), s.fused.Wer(), werr);
    out << line;
  }
}

void WriteBucketReport(const std::string &path,
                       const std::vector<BucketStats> &buckets) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write bucket report: " + path);
  WriteBucketReport(out, buckets);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace amfuse
