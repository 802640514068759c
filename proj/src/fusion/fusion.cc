// fusion/fusion.cc

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

#include "amfuse/fusion/fusion.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace amfuse {

double FuseScores(const ScoreBundle &scores, const FusionWeights &weights) {
  double fused = scores.e2e;
  if (weights.am != 0.0) {
    if (!scores.am) throw Error("missing am score for lambda_am > 0");
    fused += weights.am * *scores.am;
  }
  if (weights.lm != 0.0) fused += weights.lm * scores.lm;
  if (weights.ilm != 0.0) fused -= weights.ilm * scores.ilm;
  return fused;
}

void SortByFusedScore(NBestList *nbest, const FusionWeights &weights) {
  std::vector<std::pair<double, Hypothesis>> ranked;
  ranked.reserve(nbest->hypotheses.size());
  for (auto &hyp : nbest->hypotheses) {
    ranked.emplace_back(FuseScores(hyp.scores, weights), std::move(hyp));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto &a, const auto &b) { return a.first > b.first; });
  nbest->hypotheses.clear();
  for (auto &r : ranked) nbest->hypotheses.push_back(std::move(r.second));
}

NBestList RescoreNBest(const NBestList &nbest,
                       const PosteriorMatrix &phone_posteriors,
                       const Lexicon &lexicon, const Vocabulary &vocab,
                       const FusionWeights &weights,
                       const AmScoreOptions &options) {
  weights.Validate();
  NBestList out = nbest;
  for (auto &hyp : out.hypotheses) {
    ScoreHypothesisAm(&hyp, phone_posteriors, lexicon, vocab, options);
  }
  SortByFusedScore(&out, weights);
  return out;
}

NBestList ApplyWordLm(const NBestList &nbest, const NGramModel &word_lm,
                      const Vocabulary &vocab, const NGramOptions &opts) {
  NBestList out = nbest;
  for (auto &hyp : out.hypotheses) {
    hyp.scores.lm = word_lm.ScoreSequence(HypothesisWords(hyp, vocab), true, opts);
  }
  return out;
}

FusionWeights EquivalentLmWeights(const FusionWeights &weights) {
  weights.Validate();
  if (weights.ilm != 0.0) {
    throw Error("equivalent LM weights need lambda_ilm == 0");
  }
  const double scale = 1.0 + weights.am;
  return {0.0, weights.lm / scale, weights.am / scale};
}

TuneResult TuneWeights(const std::vector<DevUtterance> &dev,
                       const std::vector<FusionWeights> &grid,
                       const Vocabulary &vocab) {
  if (grid.empty()) throw Error("empty tuning grid");
  if (dev.empty()) throw Error("empty dev set");
  // Words of every hypothesis do not depend on the weights.
  std::vector<std::vector<ErrorCounts>> errors(dev.size());
  for (size_t u = 0; u < dev.size(); ++u) {
    if (dev[u].reference.empty()) {
      throw Error("empty reference for " + dev[u].nbest.utt_id);
    }
    if (dev[u].nbest.hypotheses.empty()) {
      throw Error("empty N-best list for " + dev[u].nbest.utt_id);
    }
    for (const auto &hyp : dev[u].nbest.hypotheses) {
      errors[u].push_back(AlignErrors(dev[u].reference, HypothesisWords(hyp, vocab)));
    }
  }

  TuneResult result;
  bool have_best = false;
  int64_t best_errors = 0;
  for (const auto &w : grid) {
    w.Validate();
    ErrorCounts total;
    for (size_t u = 0; u < dev.size(); ++u) {
      const auto &hyps = dev[u].nbest.hypotheses;
      size_t pick = 0;
      double best_score = FuseScores(hyps[0].scores, w);
      for (size_t k = 1; k < hyps.size(); ++k) {
        const double s = FuseScores(hyps[k].scores, w);
        if (s > best_score) {
          best_score = s;
          pick = k;
        }
      }
      total += errors[u][pick];
    }
    result.report.emplace_back(w, total.Wer());
    if (!have_best || total.Errors() < best_errors ||
        (total.Errors() == best_errors && w < result.best)) {
      have_best = true;
      best_errors = total.Errors();
      result.best = w;
      result.wer = total.Wer();
    }
  }
  return result;
}

std::vector<FusionWeights> MakeGrid(const GridSpec &spec) {
  if (!(spec.step > 0.0) || spec.max < 0.0) throw Error("invalid grid spec");
  std::vector<double> values;
  const int steps = static_cast<int>(std::floor(spec.max / spec.step + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    values.push_back(std::round(i * spec.step * 1e9) / 1e9);
  }
  auto axis = [&](bool tuned, double fixed) {
    return tuned ? values : std::vector<double>{fixed};
  };
  std::vector<FusionWeights> grid;
  for (double am : axis(spec.tune_am, spec.fixed.am)) {
    for (double lm : axis(spec.tune_lm, spec.fixed.lm)) {
      for (double ilm : axis(spec.tune_ilm, spec.fixed.ilm)) {
        const int nonzero = (am != 0.0) + (lm != 0.0) + (ilm != 0.0);
        if (nonzero > spec.max_nonzero) continue;
        grid.push_back({am, lm, ilm});
      }
    }
  }
  if (grid.empty()) throw Error("empty tuning grid");
  return grid;
}

void WriteTuneReport(const std::string &path, const TuneResult &result) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write tuning report: " + path);
  char line[128];
  for (const auto &[w, wer] : result.report) {
    std::snprintf(line, sizeof(line), "%.4f\t%.4f\t%.4f\t%.4f\n", w.am, w.lm,
                  w.ilm, wer);
    out << line;
  }
}

}  // namespace amfuse
