// ngram/ngram-model.h

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

#ifndef AMFUSE_NGRAM_NGRAM_MODEL_H_
#define AMFUSE_NGRAM_NGRAM_MODEL_H_

#include <array>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "amfuse/core/log-math.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

struct NGramOptions {
  // Map out-of-vocabulary tokens to <unk> when the model has it; otherwise
  // OOV tokens are an error.
  bool map_oov_to_unk = false;
};

// Backoff n-gram language model. Probabilities and backoff weights are
// stored as natural logs (ARPA log10 values are converted at load).
class NGramModel {
 public:
  static constexpr int kMaxOrder = 6;

  struct Entry {
    double log_prob = 0.0;
    double backoff = 0.0;
  };

  // Incremental scoring state: the most recent order-1 word ids.
  struct State {
    std::vector<int32_t> history;
    bool operator==(const State &) const = default;
    auto operator<=>(const State &) const = default;
  };

  NGramModel() = default;

  static NGramModel ReadArpa(const std::string &path);
  static NGramModel ParseArpa(std::istream &in);
  void WriteArpa(const std::string &path) const;

  // Builds a model from explicit tables. `words` lists the unigram
  // vocabulary; `tables[n-1]` maps word-id n-grams to entries. Validates the
  // same structural invariants as ParseArpa.
  struct NGram {
    std::vector<int32_t> words;
    Entry entry;
  };
  NGramModel(std::vector<std::string> words,
             const std::vector<std::vector<NGram>> &tables);

  int Order() const { return order_; }
  const Vocabulary &Vocab() const { return vocab_; }
  int32_t BosId() const { return bos_; }
  int32_t EosId() const { return eos_; }
  std::optional<int32_t> UnkId() const { return unk_; }

  // Resolves a token to a model id following the OOV policy; throws Error
  // for unscoreable tokens.
  int32_t LookupWord(std::string_view word, const NGramOptions &opts = {}) const;

  // log P(word | context) with ARPA backoff; `context` is in chronological
  // order and only its last Order()-1 ids matter.
  double LogProb(std::span<const int32_t> context, int32_t word) const;

  State BeginState() const;
  // Returns log P(word | state) and advances the state.
  double Advance(State *state, int32_t word) const;

  // Sum of backoff-resolved conditional log-probs with <s> as the initial
  // context; adds the </s> event when include_eos is set.
  double ScoreSequence(std::span<const std::string> tokens, bool include_eos,
                       const NGramOptions &opts = {}) const;
  double ScoreIds(std::span<const int32_t> ids, bool include_eos) const;

  // exp(-score(tokens + </s>) / (len + 1)).
  double Perplexity(std::span<const std::string> tokens,
                    const NGramOptions &opts = {}) const;

  size_t NumNGrams(int n) const { return tables_.at(n - 1).size(); }
  const Entry *Find(std::span<const int32_t> ngram) const;

 private:
  struct Key {
    std::array<int32_t, kMaxOrder> ids{};
    int32_t len = 0;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key &k) const;
  };
  static Key MakeKey(std::span<const int32_t> ids);

  void Insert(std::span<const int32_t> ngram, const Entry &entry);
  void Finalize();

  int order_ = 0;
  Vocabulary vocab_;
  int32_t bos_ = -1;
  int32_t eos_ = -1;
  std::optional<int32_t> unk_;
  std::vector<std::unordered_map<Key, Entry, KeyHash>> tables_;
};

// Minimal count-based estimator used to build internal-LM proxies and
// bucketing LMs from transcripts: add-one unigrams over `vocabulary` plus
// </s>, Witten-Bell discounted higher orders with normalizing backoffs.
NGramModel TrainNGram(const std::vector<std::vector<std::string>> &sentences,
                      const std::vector<std::string> &vocabulary, int order);

}  // namespace amfuse

#endif  // AMFUSE_NGRAM_NGRAM_MODEL_H_
