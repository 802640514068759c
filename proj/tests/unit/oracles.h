// unit/oracles.h

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

// Brute-force reference implementations used by the unit and acceptance
// tests. Deliberately naive: they enumerate everything.

#ifndef AMFUSE_TESTS_ORACLES_H_
#define AMFUSE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "amfuse/aligner/pron-graph.h"
#include "amfuse/core/posterior-matrix.h"
#include "amfuse/core/text-utils.h"
#include "amfuse/decoder/ctc-prefix-beam-search.h"
#include "amfuse/ngram/ngram-model.h"

namespace amfuse {
namespace oracle {

// Random row-stochastic matrix, rows drawn from a flat Dirichlet via
// exponentials.
inline PosteriorMatrix RandomPosteriors(std::mt19937_64 &rng, int frames,
                                        int symbols) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<std::vector<double>> rows(frames, std::vector<double>(symbols));
  for (auto &row : rows) {
    double sum = 0.0;
    for (auto &p : row) sum += (p = expo(rng) + 1e-6);
    for (auto &p : row) p /= sum;
  }
  return PosteriorMatrix::FromProbabilities(rows);
}

// Collapses a frame path: merge repeats, then drop blanks (id 0).
inline TokenSequence Collapse(const std::vector<int> &path) {
  TokenSequence out;
  int prev = -1;
  for (int s : path) {
    if (s != prev && s != 0) out.push_back(s);
    prev = s;
  }
  return out;
}

// Label sequence -> probability (linear domain), summing over all V^T paths.
inline std::map<TokenSequence, double> AllLabelProbs(const PosteriorMatrix &post) {
  const int T = post.NumFrames(), V = post.NumSymbols();
  std::map<TokenSequence, double> out;
  std::vector<int> path(T, 0);
  while (true) {
    double p = 1.0;
    for (int t = 0; t < T; ++t) p *= std::exp(static_cast<double>(post(t, path[t])));
    out[Collapse(path)] += p;
    int t = 0;
    while (t < T && ++path[t] == V) path[t++] = 0;
    if (t == T) break;
  }
  return out;
}

// Score of a token sequence under an n-gram LM given the token strings,
// without end-of-sentence, by explicit backoff recursion.
inline double LmScore(const NGramModel &lm, const std::vector<std::string> &words) {
  std::vector<int32_t> hist;
  if (lm.Order() > 1) hist.push_back(lm.BosId());
  double total = 0.0;
  for (const auto &w : words) {
    const int32_t id = lm.Vocab().Id(w);
    // Longest matching history first; accumulate backoffs on the way.
    double backoff = 0.0;
    for (size_t drop = 0;; ++drop) {
      const size_t keep = hist.size() >= drop ? hist.size() - drop : 0;
      std::vector<int32_t> ngram(hist.end() - keep, hist.end());
      ngram.push_back(id);
      if (const auto *e = lm.Find(ngram)) {
        total += backoff + e->log_prob;
        break;
      }
      std::vector<int32_t> ctx(hist.end() - keep, hist.end());
      if (!ctx.empty()) {
        if (const auto *c = lm.Find(ctx)) backoff += c->backoff;
      }
    }
    hist.push_back(id);
    if (static_cast<int>(hist.size()) > lm.Order() - 1) {
      hist.erase(hist.begin(), hist.end() - (lm.Order() - 1));
    }
  }
  return total;
}

// All source-to-sink paths of a pronunciation DAG as (phones, weight).
inline std::vector<std::pair<std::vector<PhoneId>, double>> GraphPaths(
    const PronGraph &g) {
  std::vector<std::pair<std::vector<PhoneId>, double>> out;
  std::function<void(int32_t, std::vector<PhoneId> &, double)> walk =
      [&](int32_t node, std::vector<PhoneId> &phones, double w) {
        if (node == g.Sink()) out.emplace_back(phones, w);
        for (const auto &arc : g.Arcs()) {
          if (arc.from != node) continue;
          if (arc.phone != kEpsilonPhone) phones.push_back(arc.phone);
          walk(arc.to, phones, w + arc.log_weight);
          if (arc.phone != kEpsilonPhone) phones.pop_back();
        }
      };
  std::vector<PhoneId> phones;
  walk(g.Source(), phones, 0.0);
  return out;
}

// Best score of one phone sequence over all segmentations of T frames into
// consecutive non-empty segments; also counts the segmentations.
inline double BestSegmentation(const PosteriorMatrix &post,
                               const std::vector<PhoneId> &phones,
                               const std::vector<double> &priors,
                               long *num_segmentations) {
  const int T = post.NumFrames();
  const int L = static_cast<int>(phones.size());
  double best = -INFINITY;
  if (L == 0 || L > T) return best;
  // Boundaries b_1 < ... < b_{L-1} chosen from 1..T-1.
  std::vector<int> cut(L - 1);
  for (int i = 0; i < L - 1; ++i) cut[i] = i + 1;
  while (true) {
    ++*num_segmentations;
    double s = 0.0;
    int seg = 0;
    for (int t = 0; t < T; ++t) {
      while (seg < L - 1 && t >= cut[seg]) ++seg;
      s += post(t, phones[seg]) - (priors.empty() ? 0.0 : priors[phones[seg]]);
    }
    best = std::max(best, s);
    int i = L - 2;
    while (i >= 0 && cut[i] == T - 1 - (L - 2 - i)) --i;
    if (i < 0) break;
    ++cut[i];
    for (int j = i + 1; j < L - 1; ++j) cut[j] = cut[j - 1] + 1;
  }
  return best;
}

struct Objective {
  TokenSequence best;
  double fused = kLogZero;
  double e2e = kLogZero;
};

// Argmax over every label sequence of e2e + w_lm * lm - w_ilm * ilm.
inline Objective BruteForceArgmax(const PosteriorMatrix &post,
                                  const Vocabulary &vocab,
                                  const BeamConfig &config) {
  Objective out;
  // std::map iterates label sequences in lexicographic order; strict '>'
  // keeps the smaller sequence on exact ties.
  for (const auto &[labels, p] : AllLabelProbs(post)) {
    std::vector<std::string> strings;
    for (TokenId id : labels) strings.push_back(vocab.Symbol(id));
    double fused = std::log(p);
    if (config.weights.lm != 0.0) fused += config.weights.lm * LmScore(*config.lm, strings);
    if (config.weights.ilm != 0.0) {
      fused -= config.weights.ilm * LmScore(*config.ilm, strings);
    }
    if (fused > out.fused) out = {labels, fused, std::log(p)};
  }
  return out;
}

// Plain O(nm) Levenshtein distance on words.
inline long EditDistance(const WordSequence &a, const WordSequence &b) {
  std::vector<std::vector<long>> d(a.size() + 1, std::vector<long>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<long>(i);
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<long>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

}  // namespace oracle
}  // namespace amfuse

#endif  // AMFUSE_TESTS_ORACLES_H_
