// ngram/ngram-trainer.cc

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

#include <cmath>
#include <map>
#include <set>

#include "amfuse/ngram/ngram-model.h"

namespace amfuse {

NGramModel TrainNGram(const std::vector<std::vector<std::string>> &sentences,
                      const std::vector<std::string> &vocabulary, int order) {
  if (order < 1 || order > NGramModel::kMaxOrder) {
    throw Error("unsupported n-gram order " + std::to_string(order));
  }
  std::vector<std::string> words;
  std::map<std::string, int32_t> ids;
  auto add_word = [&](const std::string &w) {
    if (ids.emplace(w, static_cast<int32_t>(words.size())).second) {
      words.push_back(w);
    }
  };
  add_word(std::string(kBos));
  add_word(std::string(kEos));
  for (const auto &w : vocabulary) add_word(w);
  const int32_t bos = 0, eos = 1;

  // counts[n-1][ngram] over padded sentences.
  std::vector<std::map<std::vector<int32_t>, double>> counts(order);
  for (const auto &sentence : sentences) {
    std::vector<int32_t> padded = {bos};
    for (const auto &w : sentence) {
      auto it = ids.find(w);
      if (it == ids.end()) throw Error("training token not in vocabulary: " + w);
      padded.push_back(it->second);
    }
    padded.push_back(eos);
    for (int n = 1; n <= order; ++n) {
      for (size_t end = 1; end < padded.size(); ++end) {
        if (end + 1 < static_cast<size_t>(n)) continue;
        std::vector<int32_t> ngram(padded.begin() + (end + 1 - n),
                                   padded.begin() + end + 1);
        counts[n - 1][ngram] += 1.0;
      }
    }
  }

  std::vector<std::map<std::vector<int32_t>, NGramModel::Entry>> tables(order);
  double total = 0.0;
  for (const auto &[ng, c] : counts[0]) total += c;
  const double predicted = static_cast<double>(words.size() - 1);  // all but <s>
  for (int32_t id = 0; id < static_cast<int32_t>(words.size()); ++id) {
    NGramModel::Entry e;
    if (id == bos) {
      e.log_prob = -99.0 * std::log(10.0);
    } else {
      auto it = counts[0].find({id});
      const double c = it == counts[0].end() ? 0.0 : it->second;
      e.log_prob = std::log((c + 1.0) / (total + predicted));
    }
    tables[0][{id}] = e;
  }

  auto build = [&](int n) {
    std::vector<std::vector<NGramModel::NGram>> t(n);
    for (int k = 0; k < n; ++k) {
      for (const auto &[ng, e] : tables[k]) t[k].push_back({ng, e});
    }
    return NGramModel(words, t);
  };

  for (int n = 2; n <= order; ++n) {
    const NGramModel lower = build(n - 1);
    std::map<std::vector<int32_t>, std::vector<std::pair<int32_t, double>>> by_ctx;
    for (const auto &[ng, c] : counts[n - 1]) {
      by_ctx[std::vector<int32_t>(ng.begin(), ng.end() - 1)].emplace_back(ng.back(), c);
    }
    for (const auto &[ctx, followers] : by_ctx) {
      double ctx_count = 0.0;
      for (const auto &f : followers) ctx_count += f.second;
      const double types = static_cast<double>(followers.size());
      const std::span<const int32_t> shorter =
          std::span<const int32_t>(ctx).subspan(1);
      double seen_mass = 0.0, lower_mass = 0.0;
      for (const auto &[w, c] : followers) {
        seen_mass += c / (ctx_count + types);
        lower_mass += std::exp(lower.LogProb(shorter, w));
      }
      const bool saturated = 1.0 - lower_mass <= 1e-12;
      for (const auto &[w, c] : followers) {
        std::vector<int32_t> ng = ctx;
        ng.push_back(w);
        const double p = saturated ? c / ctx_count : c / (ctx_count + types);
        tables[n - 1][ng].log_prob = std::log(p);
      }
      tables[n - 2][ctx].backoff =
          saturated ? 0.0 : std::log((1.0 - seen_mass) / (1.0 - lower_mass));
    }
  }
  return build(order);
}

}  // namespace amfuse
