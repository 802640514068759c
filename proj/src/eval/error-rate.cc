// eval/error-rate.cc

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

#include "amfuse/eval/error-rate.h"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace amfuse {

double ErrorCounts::Wer() const {
  if (ref_length <= 0) throw Error("WER undefined for an empty reference");
  return static_cast<double>(Errors()) / static_cast<double>(ref_length);
}

ErrorCounts &ErrorCounts::operator+=(const ErrorCounts &o) {
  substitutions += o.substitutions;
  deletions += o.deletions;
  insertions += o.insertions;
  ref_length += o.ref_length;
  return *this;
}

ErrorCounts AlignErrors(const WordSequence &ref, const WordSequence &hyp) {
  // Each cell holds (edits, -substitutions); lexicographic minimum.
  struct Cell {
    int64_t edits = 0;
    int64_t neg_subs = 0;
    bool operator<(const Cell &o) const {
      return edits != o.edits ? edits < o.edits : neg_subs < o.neg_subs;
    }
  };
  const size_t n = ref.size(), m = hyp.size();
  std::vector<Cell> d((n + 1) * (m + 1));
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 0; i <= n; ++i) d[at(i, 0)] = {static_cast<int64_t>(i), 0};
  for (size_t j = 0; j <= m; ++j) d[at(0, j)] = {static_cast<int64_t>(j), 0};
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      Cell diag = d[at(i - 1, j - 1)];
      if (ref[i - 1] != hyp[j - 1]) {
        ++diag.edits;
        --diag.neg_subs;
      }
      Cell del = d[at(i - 1, j)], ins = d[at(i, j - 1)];
      ++del.edits;
      ++ins.edits;
      d[at(i, j)] = std::min({diag, del, ins});
    }
  }
  // With S fixed, D + I = edits - S and D - I = n - m.
  const Cell &best = d[at(n, m)];
  ErrorCounts counts;
  counts.ref_length = static_cast<int64_t>(n);
  counts.substitutions = -best.neg_subs;
  const int64_t indels = best.edits - counts.substitutions;
  const int64_t diff = static_cast<int64_t>(n) - static_cast<int64_t>(m);
  counts.deletions = (indels + diff) / 2;
  counts.insertions = (indels - diff) / 2;
  return counts;
}

ErrorCounts WordErrors(const WordSequence &ref, const WordSequence &hyp) {
  if (ref.empty()) throw Error("empty reference");
  return AlignErrors(ref, hyp);
}

WordSequence HypothesisWords(const Hypothesis &hyp, const Vocabulary &vocab) {
  return NormalizeText(JoinWords(Detokenize(hyp.tokens, vocab, true)));
}

OracleResult OracleErrors(const NBestList &nbest, const WordSequence &ref,
                          const Vocabulary &vocab) {
  if (nbest.hypotheses.empty()) throw Error("empty N-best list for " + nbest.utt_id);
  OracleResult best;
  for (size_t k = 0; k < nbest.hypotheses.size(); ++k) {
    const ErrorCounts c = AlignErrors(ref, HypothesisWords(nbest.hypotheses[k], vocab));
    if (k == 0 || c.Errors() < best.counts.Errors()) {
      best.counts = c;
      best.index = k;
    }
  }
  return best;
}

double Werr(double baseline_wer, double new_wer) {
  if (!(baseline_wer > 0.0)) throw Error("WERR undefined for a zero baseline");
  return (baseline_wer - new_wer) / baseline_wer;
}

void WriteScoreReport(const std::string &path,
                      const std::vector<UtteranceScore> &scores) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write score report: " + path);
  char wer[32];
  for (const auto &s : scores) {
    const auto &c = s.counts;
    if (c.ref_length > 0) {
      std::snprintf(wer, sizeof(wer), "%.4f", c.Wer());
    } else {
      std::snprintf(wer, sizeof(wer), "NA");
    }
    out << s.utt_id << '\t' << c.substitutions << '\t' << c.deletions << '\t'
        << c.insertions << '\t' << c.ref_length << '\t' << wer << '\n';
  }
}

}  // namespace amfuse
