// aligner/pron-graph.h

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

#ifndef AMFUSE_ALIGNER_PRON_GRAPH_H_
#define AMFUSE_ALIGNER_PRON_GRAPH_H_

#include <optional>
#include <vector>

#include "amfuse/core/lexicon.h"
#include "amfuse/core/text-utils.h"

namespace amfuse {

inline constexpr PhoneId kEpsilonPhone = -1;

struct PronArc {
  int32_t from = 0;
  int32_t to = 0;
  PhoneId phone = kEpsilonPhone;
  // Log pronunciation prior; nonzero only on the first phoneme of a
  // pronunciation.
  double log_weight = 0.0;
};

// Acyclic pronunciation graph for a word sequence. Node ids are a
// topological order (every arc goes from a lower to a higher id); node 0 is
// the source and the last node is the sink.
class PronGraph {
 public:
  PronGraph() = default;
  PronGraph(int32_t num_nodes, std::vector<PronArc> arcs);

  int32_t NumNodes() const { return num_nodes_; }
  int32_t Source() const { return 0; }
  int32_t Sink() const { return num_nodes_ - 1; }
  const std::vector<PronArc> &Arcs() const { return arcs_; }

  // Number of distinct source->sink arc paths.
  double CountPaths() const;
  // Fewest phoneme (non-epsilon) arcs on any source->sink path.
  int32_t MinPhonemes() const;

 private:
  int32_t num_nodes_ = 0;
  std::vector<PronArc> arcs_;
};

struct ExpandOptions {
  // Optional silence before, between and after words, free of charge.
  bool allow_silence = false;
  std::optional<PhoneId> silence_phone;
  // When false every pronunciation arc carries weight 0.
  bool use_priors = true;
};

// Builds the graph whose paths enumerate every pronunciation choice (and
// silence choice) for `words`. Throws Error("OOV word: ...") for words
// missing from the lexicon.
PronGraph ExpandPronunciations(const WordSequence &words, const Lexicon &lexicon,
                               const ExpandOptions &opts = {});

}  // namespace amfuse

#endif  // AMFUSE_ALIGNER_PRON_GRAPH_H_
