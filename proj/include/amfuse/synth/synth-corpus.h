// synth/synth-corpus.h

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

#ifndef AMFUSE_SYNTH_SYNTH_CORPUS_H_
#define AMFUSE_SYNTH_SYNTH_CORPUS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amfuse/core/lexicon.h"
#include "amfuse/core/posterior-matrix.h"
#include "amfuse/core/text-utils.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

struct SynthConfig {
  uint64_t seed = 7;
  int num_words = 50;
  int num_phones = 20;
  double zipf_exponent = 1.0;
  int train_utterances = 1000;
  int dev_utterances = 100;
  int test_utterances = 500;
  // Extra in-domain text for the external LMs.
  int lm_text_utterances = 2000;
  int min_words = 3;
  int max_words = 8;
  // Frames per emitted symbol (token or phoneme), inclusive range.
  int min_frames = 1;
  int max_frames = 3;
  // Probability of a blank span after each token in e2e mode.
  double blank_prob = 0.5;
  // Posterior mass on the true symbol, and its multiplicative reduction for
  // rare tokens in e2e mode.
  double alpha = 0.8;
  double delta = 0.5;
  // True-symbol mass of the phoneme AM; unset means alpha.
  std::optional<double> phone_alpha;
  // Fraction of token types (by expected frequency) treated as rare.
  double rare_quantile = 0.2;
  // Fraction of words, least frequent first, split into two wordpieces.
  double split_fraction = 0.5;
  // Probability that a word is realized acoustically as another word with
  // the same wordpiece shape. Shared by both posterior modes, so neither AM
  // can recover the transcript word.
  double swap_prob = 0.05;
  // Exponent applied to the uniform draws that spread the wrong-symbol mass.
  double noise_sharpness = 4.0;

  // Rejects configs where the true symbol could fall to chance level.
  void Validate() const;
  double PhoneAlpha() const { return phone_alpha.value_or(alpha); }
};

enum class PosteriorMode { kE2e, kPhoneme };

struct SynthCorpus {
  SynthConfig config;
  Vocabulary tokens;  // CTC wordpiece vocabulary
  Vocabulary phones;
  Lexicon lexicon;
  std::vector<std::string> words;  // most frequent first
  std::map<std::string, TokenSequence> word_tokens;
  std::vector<bool> rare_token;  // indexed by token id
  std::vector<Transcript> train;
  std::vector<Transcript> dev;
  std::vector<Transcript> test;
  std::vector<Transcript> lm_text;

  // Wordpiece token strings of a transcript.
  std::vector<std::string> TokenStrings(const std::string &text) const;
};

// Deterministic in `config`: Zipf-distributed words built from CV
// syllables, 1-2 pronunciations per word, and the transcript splits.
SynthCorpus GenerateCorpus(const SynthConfig &config);

// Posteriors for one utterance; a pure function of (config, corpus, utt_id,
// text, mode). Each symbol gets a frame span; frame rows put the true-symbol
// mass on the true symbol (reduced for rare tokens in e2e mode only) and
// spread the rest over the other symbols with seeded sharpened weights that
// concentrate on one confusable symbol per span.
PosteriorMatrix GeneratePosteriors(const SynthCorpus &corpus,
                                   const std::string &utt_id,
                                   const std::string &text, PosteriorMode mode);

}  // namespace amfuse

#endif  // AMFUSE_SYNTH_SYNTH_CORPUS_H_
