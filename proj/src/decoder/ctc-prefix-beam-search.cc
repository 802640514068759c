// decoder/ctc-prefix-beam-search.cc

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

#include "amfuse/decoder/ctc-prefix-beam-search.h"

#include <algorithm>
#include <map>

namespace amfuse {

void BeamConfig::Validate() const {
  if (beam_width < 1) throw Error("beam_width must be >= 1");
  if (n_best < 1) throw Error("n_best must be >= 1");
  if (beam_width < n_best) throw Error("beam_width must be >= n_best");
  weights.Validate();
  if (weights.lm > 0.0 && lm == nullptr) {
    throw Error("lambda_lm > 0 requires an external LM");
  }
  if (weights.ilm > 0.0 && ilm == nullptr) {
    throw Error("lambda_ilm > 0 requires an internal LM");
  }
}

namespace {

struct PrefixEntry {
  double log_blank = kLogZero;
  double log_nonblank = kLogZero;
  double lm = 0.0;
  double ilm = 0.0;
  NGramModel::State lm_state;
  NGramModel::State ilm_state;

  double Total() const { return LogAdd(log_blank, log_nonblank); }
};

using Beam = std::map<TokenSequence, PrefixEntry>;

std::vector<int32_t> MapVocabulary(const Vocabulary &vocab,
                                   const NGramModel *model,
                                   const NGramOptions &opts,
                                   const char *what) {
  std::vector<int32_t> ids(vocab.Size(), -1);
  if (model == nullptr) return ids;
  for (int32_t id = 1; id < vocab.Size(); ++id) {
    try {
      ids[id] = model->LookupWord(vocab.Symbol(id), opts);
    } catch (const Error &) {
      throw Error(std::string("vocab mismatch: token '") + vocab.Symbol(id) +
                  "' missing from " + what);
    }
  }
  return ids;
}

}  // namespace

CtcPrefixBeamSearch::CtcPrefixBeamSearch(const Vocabulary &vocab,
                                         BeamConfig config)
    : vocab_(vocab), config_(std::move(config)) {
  config_.Validate();
  if (!vocab_.IsCtc()) throw Error("prefix beam search needs a CTC vocabulary");
  lm_ids_ = MapVocabulary(vocab_, config_.lm, config_.lm_options, "external LM");
  ilm_ids_ = MapVocabulary(vocab_, config_.ilm, config_.lm_options, "internal LM");
}

double CtcPrefixBeamSearch::Fused(double e2e, double lm, double ilm) const {
  double score = e2e;
  if (config_.weights.lm != 0.0) score += config_.weights.lm * lm;
  if (config_.weights.ilm != 0.0) score -= config_.weights.ilm * ilm;
  return score;
}

NBestList CtcPrefixBeamSearch::Decode(const PosteriorMatrix &posteriors,
                                      const std::string &utt_id) const {
  if (posteriors.NumSymbols() != vocab_.Size()) {
    throw Error("posterior dimension " + std::to_string(posteriors.NumSymbols()) +
                " does not match vocabulary size " + std::to_string(vocab_.Size()));
  }
  const NGramModel *lm = config_.lm;
  const NGramModel *ilm = config_.ilm;

  Beam beam;
  {
    PrefixEntry root;
    root.log_blank = 0.0;
    if (lm) root.lm_state = lm->BeginState();
    if (ilm) root.ilm_state = ilm->BeginState();
    beam.emplace(TokenSequence{}, std::move(root));
  }

  auto same_prefix = [](Beam *next, const TokenSequence &prefix,
                        const PrefixEntry &from) -> PrefixEntry & {
    auto it = next->find(prefix);
    if (it != next->end()) return it->second;
    PrefixEntry e;
    e.lm = from.lm;
    e.ilm = from.ilm;
    e.lm_state = from.lm_state;
    e.ilm_state = from.ilm_state;
    return next->emplace(prefix, std::move(e)).first->second;
  };
  auto extended = [&](Beam *next, TokenSequence &&prefix, const PrefixEntry &from,
                      TokenId token) -> PrefixEntry & {
    auto it = next->find(prefix);
    if (it != next->end()) return it->second;
    PrefixEntry e;
    e.lm = from.lm;
    e.ilm = from.ilm;
    if (lm) {
      e.lm_state = from.lm_state;
      e.lm += lm->Advance(&e.lm_state, lm_ids_[token]);
    }
    if (ilm) {
      e.ilm_state = from.ilm_state;
      e.ilm += ilm->Advance(&e.ilm_state, ilm_ids_[token]);
    }
    return next->emplace(std::move(prefix), std::move(e)).first->second;
  };

  struct Ranked {
    double score;
    Beam::node_type node;
  };
  auto prune = [&](Beam *candidates, size_t keep) {
    std::vector<Ranked> ranked;
    ranked.reserve(candidates->size());
    while (!candidates->empty()) {
      auto node = candidates->extract(candidates->begin());
      const auto &e = node.mapped();
      ranked.push_back({Fused(e.Total(), e.lm, e.ilm), std::move(node)});
    }
    // Extraction order is lexicographic, so a stable sort on the score alone
    // realizes the tie rule.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const Ranked &a, const Ranked &b) { return a.score > b.score; });
    if (ranked.size() > keep) ranked.resize(keep);
    return ranked;
  };

  const int32_t num_symbols = posteriors.NumSymbols();
  for (int32_t t = 0; t < posteriors.NumFrames(); ++t) {
    Beam next;
    for (const auto &[prefix, entry] : beam) {
      const double total = entry.Total();
      for (TokenId c = 0; c < num_symbols; ++c) {
        const double p = posteriors(t, c);
        if (c == kBlankId) {
          auto &e = same_prefix(&next, prefix, entry);
          e.log_blank = LogAdd(e.log_blank, total + p);
        } else if (!prefix.empty() && c == prefix.back()) {
          auto &same = same_prefix(&next, prefix, entry);
          same.log_nonblank = LogAdd(same.log_nonblank, entry.log_nonblank + p);
          TokenSequence ext = prefix;
          ext.push_back(c);
          auto &e = extended(&next, std::move(ext), entry, c);
          e.log_nonblank = LogAdd(e.log_nonblank, entry.log_blank + p);
        } else {
          TokenSequence ext = prefix;
          ext.push_back(c);
          auto &e = extended(&next, std::move(ext), entry, c);
          e.log_nonblank = LogAdd(e.log_nonblank, total + p);
        }
      }
    }
    auto kept = prune(&next, static_cast<size_t>(config_.beam_width));
    beam.clear();
    for (auto &r : kept) beam.insert(std::move(r.node));
  }

  auto final_ranked = prune(&beam, static_cast<size_t>(config_.n_best));
  NBestList nbest;
  nbest.utt_id = utt_id;
  for (auto &r : final_ranked) {
    Hypothesis hyp;
    hyp.tokens = r.node.key();
    const auto &e = r.node.mapped();
    hyp.scores.e2e = e.Total();
    hyp.scores.lm = e.lm;
    hyp.scores.ilm = e.ilm;
    nbest.hypotheses.push_back(std::move(hyp));
  }
  return nbest;
}

}  // namespace amfuse
