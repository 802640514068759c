// aligner/pron-graph.cc

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

#include "amfuse/aligner/pron-graph.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amfuse {

PronGraph::PronGraph(int32_t num_nodes, std::vector<PronArc> arcs)
    : num_nodes_(num_nodes), arcs_(std::move(arcs)) {
  if (num_nodes_ < 2) throw Error("pronunciation graph needs a source and a sink");
  for (const auto &arc : arcs_) {
    if (arc.from < 0 || arc.to >= num_nodes_ || arc.from >= arc.to) {
      throw Error("pronunciation graph arcs must follow node order");
    }
  }
}

double PronGraph::CountPaths() const {
  std::vector<double> count(num_nodes_, 0.0);
  count[Source()] = 1.0;
  // Arcs are not sorted, but node order is topological.
  std::vector<std::vector<const PronArc *>> out(num_nodes_);
  for (const auto &arc : arcs_) out[arc.from].push_back(&arc);
  for (int32_t n = 0; n < num_nodes_; ++n) {
    for (const PronArc *arc : out[n]) count[arc->to] += count[n];
  }
  return count[Sink()];
}

int32_t PronGraph::MinPhonemes() const {
  constexpr int32_t kInf = std::numeric_limits<int32_t>::max();
  std::vector<int32_t> dist(num_nodes_, kInf);
  dist[Source()] = 0;
  std::vector<std::vector<const PronArc *>> out(num_nodes_);
  for (const auto &arc : arcs_) out[arc.from].push_back(&arc);
  for (int32_t n = 0; n < num_nodes_; ++n) {
    if (dist[n] == kInf) continue;
    for (const PronArc *arc : out[n]) {
      const int32_t d = dist[n] + (arc->phone == kEpsilonPhone ? 0 : 1);
      dist[arc->to] = std::min(dist[arc->to], d);
    }
  }
  return dist[Sink()];
}

PronGraph ExpandPronunciations(const WordSequence &words, const Lexicon &lexicon,
                               const ExpandOptions &opts) {
  if (words.empty()) throw Error("empty word sequence");
  if (opts.allow_silence && !opts.silence_phone) {
    throw Error("allow_silence requires a silence phoneme");
  }
  std::vector<const std::vector<Pronunciation> *> prons;
  for (const auto &w : words) {
    const auto *p = lexicon.Find(w);
    if (p == nullptr) throw Error("OOV word: " + w);
    prons.push_back(p);
  }

  std::vector<PronArc> arcs;
  int32_t num_nodes = 1;
  int32_t current = 0;
  auto silence_slot = [&]() {
    if (!opts.allow_silence) return;
    const int32_t after = num_nodes++;
    arcs.push_back({current, after, *opts.silence_phone, 0.0});
    arcs.push_back({current, after, kEpsilonPhone, 0.0});
    current = after;
  };

  silence_slot();
  for (const auto *word_prons : prons) {
    const int32_t start = current;
    std::vector<size_t> dangling;
    for (const auto &pron : *word_prons) {
      int32_t prev = start;
      for (size_t j = 0; j < pron.phones.size(); ++j) {
        const double w = (j == 0 && opts.use_priors) ? std::log(pron.prior) : 0.0;
        if (j + 1 == pron.phones.size()) {
          dangling.push_back(arcs.size());
          arcs.push_back({prev, -1, pron.phones[j], w});
        } else {
          const int32_t node = num_nodes++;
          arcs.push_back({prev, node, pron.phones[j], w});
          prev = node;
        }
      }
    }
    current = num_nodes++;
    for (size_t i : dangling) arcs[i].to = current;
    silence_slot();
  }
  return PronGraph(num_nodes, std::move(arcs));
}

}  // namespace amfuse
