// aligner/forced-aligner.cc

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

#include "amfuse/aligner/forced-aligner.h"

#include <map>

namespace amfuse {
namespace {

constexpr int32_t kStay = -1;
constexpr int32_t kStart = -2;

struct Transition {
  int32_t arc;
  double weight;
};

// Best epsilon-path weight from `node` to every node reachable through
// epsilon arcs (including `node` itself at weight 0).
std::map<int32_t, double> EpsilonClosure(
    int32_t node, const std::vector<std::vector<int32_t>> &eps_out,
    const std::vector<PronArc> &arcs) {
  std::map<int32_t, double> best{{node, 0.0}};
  // Node ids are topological, so processing in id order is enough.
  for (auto it = best.begin(); it != best.end(); ++it) {
    for (int32_t a : eps_out[it->first]) {
      const double w = it->second + arcs[a].log_weight;
      auto [pos, inserted] = best.emplace(arcs[a].to, w);
      if (!inserted && w > pos->second) pos->second = w;
    }
  }
  return best;
}

}  // namespace

Alignment ViterbiAlign(const PosteriorMatrix &posteriors, const PronGraph &graph,
                       const AlignOptions &opts) {
  const auto &arcs = graph.Arcs();
  const int32_t num_frames = posteriors.NumFrames();
  const int32_t num_arcs = static_cast<int32_t>(arcs.size());
  if (!opts.log_phone_priors.empty() &&
      static_cast<int32_t>(opts.log_phone_priors.size()) != posteriors.NumSymbols()) {
    throw Error("phone prior vector does not match posterior dimension");
  }
  for (const auto &arc : arcs) {
    if (arc.phone != kEpsilonPhone &&
        (arc.phone < 0 || arc.phone >= posteriors.NumSymbols())) {
      throw Error("phoneme id " + std::to_string(arc.phone) +
                  " outside posterior dimension");
    }
  }
  const int32_t min_phones = graph.MinPhonemes();
  if (min_phones == std::numeric_limits<int32_t>::max()) {
    throw Error("pronunciation graph has no source-to-sink path");
  }
  if (num_frames < min_phones) throw Error("utterance too short to align");

  std::vector<std::vector<int32_t>> eps_out(graph.NumNodes()), out(graph.NumNodes());
  for (int32_t a = 0; a < num_arcs; ++a) {
    (arcs[a].phone == kEpsilonPhone ? eps_out : out)[arcs[a].from].push_back(a);
  }
  std::vector<std::map<int32_t, double>> closure(graph.NumNodes());
  for (int32_t n = 0; n < graph.NumNodes(); ++n) {
    closure[n] = EpsilonClosure(n, eps_out, arcs);
  }

  // Entry transitions into each phoneme arc from the previous phoneme arc,
  // plus start and final weights.
  std::vector<std::vector<Transition>> enter(num_arcs);
  std::vector<double> start(num_arcs, kLogZero), final(num_arcs, kLogZero);
  for (const auto &[node, w] : closure[graph.Source()]) {
    for (int32_t a : out[node]) start[a] = std::max(start[a], w + arcs[a].log_weight);
  }
  for (int32_t b = 0; b < num_arcs; ++b) {
    if (arcs[b].phone == kEpsilonPhone) continue;
    for (const auto &[node, w] : closure[arcs[b].to]) {
      if (node == graph.Sink()) final[b] = std::max(final[b], w);
      for (int32_t a : out[node]) enter[a].push_back({b, w + arcs[a].log_weight});
    }
  }

  auto frame_score = [&](int32_t t, PhoneId p) {
    double s = posteriors(t, p);
    if (!opts.log_phone_priors.empty()) s -= opts.log_phone_priors[p];
    return s;
  };

  std::vector<double> score(static_cast<size_t>(num_frames) * num_arcs, kLogZero);
  std::vector<int32_t> back(static_cast<size_t>(num_frames) * num_arcs, kStart);
  auto at = [&](int32_t t, int32_t a) { return static_cast<size_t>(t) * num_arcs + a; };
  for (int32_t a = 0; a < num_arcs; ++a) {
    if (arcs[a].phone == kEpsilonPhone || start[a] == kLogZero) continue;
    score[at(0, a)] = start[a] + frame_score(0, arcs[a].phone);
  }
  for (int32_t t = 1; t < num_frames; ++t) {
    for (int32_t a = 0; a < num_arcs; ++a) {
      if (arcs[a].phone == kEpsilonPhone) continue;
      double best = score[at(t - 1, a)];
      int32_t from = kStay;
      for (const auto &tr : enter[a]) {
        const double s = score[at(t - 1, tr.arc)] + tr.weight;
        if (s > best) {
          best = s;
          from = tr.arc;
        }
      }
      if (best == kLogZero) continue;
      score[at(t, a)] = best + frame_score(t, arcs[a].phone);
      back[at(t, a)] = from;
    }
  }

  Alignment result;
  int32_t best_arc = -1;
  for (int32_t a = 0; a < num_arcs; ++a) {
    if (arcs[a].phone == kEpsilonPhone || final[a] == kLogZero) continue;
    const double s = score[at(num_frames - 1, a)] + final[a];
    if (s > result.score) {
      result.score = s;
      best_arc = a;
    }
  }
  if (best_arc < 0) throw Error("utterance too short to align");

  result.frame_phones.resize(num_frames);
  int32_t a = best_arc;
  result.arc_path.push_back(a);
  for (int32_t t = num_frames - 1; t >= 0; --t) {
    result.frame_phones[t] = arcs[a].phone;
    const int32_t from = back[at(t, a)];
    if (t > 0 && from != kStay) {
      a = from;
      result.arc_path.push_back(a);
    }
  }
  std::reverse(result.arc_path.begin(), result.arc_path.end());
  return result;
}

double AmScore(const Hypothesis &hyp, const PosteriorMatrix &phone_posteriors,
               const Lexicon &lexicon, const Vocabulary &vocab,
               const AmScoreOptions &opts) {
  const WordSequence words = Detokenize(hyp.tokens, vocab, true);
  const double floor = opts.floor_per_frame * phone_posteriors.NumFrames();
  if (words.empty()) {
    if (!opts.expand.allow_silence) return kLogZero;
    if (!opts.expand.silence_phone) {
      throw Error("allow_silence requires a silence phoneme");
    }
    const PronGraph silence(2, {{0, 1, *opts.expand.silence_phone, 0.0}});
    return ViterbiAlign(phone_posteriors, silence, opts.align).score;
  }
  for (const auto &w : words) {
    if (!lexicon.Contains(w)) {
      if (opts.oov_policy == OovPolicy::kFloor) return floor;
      throw Error("OOV word: " + w);
    }
  }
  const PronGraph graph = ExpandPronunciations(words, lexicon, opts.expand);
  if (graph.MinPhonemes() > phone_posteriors.NumFrames()) return kLogZero;
  return ViterbiAlign(phone_posteriors, graph, opts.align).score;
}

double ScoreHypothesisAm(Hypothesis *hyp, const PosteriorMatrix &phone_posteriors,
                         const Lexicon &lexicon, const Vocabulary &vocab,
                         const AmScoreOptions &opts) {
  const double score = AmScore(*hyp, phone_posteriors, lexicon, vocab, opts);
  hyp->scores.am = score;
  return score;
}

}  // namespace amfuse
