// synth/synth-corpus.cc

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

#include "amfuse/synth/synth-corpus.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "amfuse/synth/random.h"

namespace amfuse {
namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr const char *kArpabet[] = {
    "aa", "ae", "ah", "ao", "aw", "ay", "b",  "ch", "d",  "dh",
    "eh", "er", "ey", "f",  "g",  "hh", "ih", "iy", "jh", "k",
    "l",  "m",  "n",  "ng", "ow", "oy", "p",  "r",  "s",  "sh",
    "t",  "th", "uh", "uw", "v",  "w",  "y",  "z",  "zh"};
constexpr double kSecondPronProb = 0.3;
constexpr double kProbFloor = 1e-12;

std::string PaddedId(const std::string &prefix, int index) {
  std::string num = std::to_string(index);
  if (num.size() < 4) num.insert(0, 4 - num.size(), '0');
  return prefix + "_" + num;
}

std::vector<Transcript> SampleTranscripts(const SynthConfig &config,
                                          const std::vector<std::string> &words,
                                          const std::vector<double> &cdf,
                                          const std::string &split, int count) {
  Rng rng(DeriveSeed(config.seed, "transcripts:" + split));
  std::vector<Transcript> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.UniformInt(config.min_words, config.max_words));
    WordSequence utt;
    for (int k = 0; k < n; ++k) {
      const double u = rng.Uniform01() * cdf.back();
      const size_t r = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
      utt.push_back(words[std::min(r, words.size() - 1)]);
    }
    out.push_back({PaddedId(split, i + 1), JoinWords(utt)});
  }
  return out;
}

}  // namespace

void SynthConfig::Validate() const {
  if (num_words < 2) throw Error("synth: num_words must be >= 2");
  if (num_phones < 2) throw Error("synth: num_phones must be >= 2");
  if (zipf_exponent < 0.0) throw Error("synth: zipf_exponent must be >= 0");
  if (train_utterances < 0 || dev_utterances < 0 || test_utterances < 0 ||
      lm_text_utterances < 0) {
    throw Error("synth: utterance counts must be >= 0");
  }
  if (min_words < 1 || max_words < min_words) {
    throw Error("synth: invalid utterance length range");
  }
  if (min_frames < 1 || max_frames < min_frames) {
    throw Error("synth: invalid frames-per-symbol range");
  }
  if (!(blank_prob >= 0.0 && blank_prob <= 1.0)) {
    throw Error("synth: blank_prob must be in [0,1]");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("synth: alpha must be in (0,1]");
  if (!(delta >= 0.0 && delta < 1.0)) throw Error("synth: delta must be in [0,1)");
  if (!(rare_quantile >= 0.0 && rare_quantile <= 1.0)) {
    throw Error("synth: rare_quantile must be in [0,1]");
  }
  if (!(split_fraction >= 0.0 && split_fraction <= 1.0)) {
    throw Error("synth: split_fraction must be in [0,1]");
  }
  if (!(swap_prob >= 0.0 && swap_prob <= 1.0)) {
    throw Error("synth: swap_prob must be in [0,1]");
  }
  if (!(noise_sharpness > 0.0)) throw Error("synth: noise_sharpness must be > 0");
  // The wordpiece inventory has at least num_words / 2 + 1 symbols.
  const double min_vocab = std::floor(num_words / 2.0) + 1.0;
  if (!(alpha * (1.0 - delta) > 1.0 / min_vocab)) {
    throw Error("synth: alpha*(1-delta) must exceed chance level 1/V");
  }
  if (!(PhoneAlpha() > 1.0 / num_phones && PhoneAlpha() <= 1.0)) {
    throw Error("synth: phone_alpha must be in (1/num_phones, 1]");
  }
}

std::vector<std::string> SynthCorpus::TokenStrings(const std::string &text) const {
  std::vector<std::string> out;
  for (const auto &w : SplitWhitespace(text)) {
    auto it = word_tokens.find(w);
    if (it == word_tokens.end()) throw Error("synth: OOV word " + w);
    for (TokenId id : it->second) out.push_back(tokens.Symbol(id));
  }
  return out;
}

SynthCorpus GenerateCorpus(const SynthConfig &config) {
  config.Validate();
  SynthCorpus corpus;
  corpus.config = config;

  // Words: three consonant-vowel syllables, unique, in Zipf rank order.
  {
    Rng rng(DeriveSeed(config.seed, "words"));
    std::set<std::string> seen;
    while (static_cast<int>(corpus.words.size()) < config.num_words) {
      std::string w;
      for (int s = 0; s < 3; ++s) {
        w += kConsonants[rng.UniformInt(0, kConsonants.size() - 1)];
        w += kVowels[rng.UniformInt(0, kVowels.size() - 1)];
      }
      if (seen.insert(w).second) corpus.words.push_back(w);
    }
  }
  std::vector<double> word_prob(config.num_words), cdf(config.num_words);
  for (int r = 0; r < config.num_words; ++r) {
    word_prob[r] = std::pow(static_cast<double>(r + 1), -config.zipf_exponent);
  }
  const double zipf_norm = std::accumulate(word_prob.begin(), word_prob.end(), 0.0);
  for (auto &p : word_prob) p /= zipf_norm;
  std::partial_sum(word_prob.begin(), word_prob.end(), cdf.begin());

  // Wordpieces: frequent words are single tokens, the least frequent
  // split_fraction are split into two three-letter pieces.
  const int num_split =
      static_cast<int>(std::lround(config.split_fraction * config.num_words));
  std::vector<std::string> symbols = {std::string(kBlankSymbol)};
  std::map<std::string, TokenId> piece_ids;
  auto piece = [&](const std::string &s) {
    auto [it, inserted] = piece_ids.emplace(s, static_cast<TokenId>(symbols.size()));
    if (inserted) symbols.push_back(s);
    return it->second;
  };
  const std::string boundary(kWordBoundary);
  for (int r = 0; r < config.num_words; ++r) {
    const auto &w = corpus.words[r];
    TokenSequence toks;
    if (r >= config.num_words - num_split) {
      toks.push_back(piece(boundary + w.substr(0, 3)));
      toks.push_back(piece(w.substr(3)));
    } else {
      toks.push_back(piece(boundary + w));
    }
    corpus.word_tokens[w] = toks;
  }
  corpus.tokens = Vocabulary(symbols, Vocabulary::Kind::kCtc);
  if (!(config.alpha * (1.0 - config.delta) > 1.0 / corpus.tokens.Size())) {
    throw Error("synth: alpha*(1-delta) must exceed chance level 1/V");
  }

  // Rare tokens: bottom rare_quantile of token types by expected frequency.
  {
    std::vector<double> freq(corpus.tokens.Size(), 0.0);
    for (int r = 0; r < config.num_words; ++r) {
      for (TokenId id : corpus.word_tokens[corpus.words[r]]) freq[id] += word_prob[r];
    }
    std::vector<TokenId> order;
    for (TokenId id = 1; id < corpus.tokens.Size(); ++id) order.push_back(id);
    std::stable_sort(order.begin(), order.end(),
                     [&](TokenId a, TokenId b) { return freq[a] < freq[b]; });
    const size_t num_rare = static_cast<size_t>(
        std::lround(config.rare_quantile * static_cast<double>(order.size())));
    corpus.rare_token.assign(corpus.tokens.Size(), false);
    for (size_t i = 0; i < num_rare && i < order.size(); ++i) {
      corpus.rare_token[order[i]] = true;
    }
  }

  std::vector<std::string> phone_names;
  for (int p = 0; p < config.num_phones; ++p) {
    phone_names.push_back(p < static_cast<int>(std::size(kArpabet))
                              ? std::string(kArpabet[p])
                              : "p" + std::to_string(p));
  }
  corpus.phones = Vocabulary(phone_names, Vocabulary::Kind::kPlain);

  {
    Rng rng(DeriveSeed(config.seed, "pronunciations"));
    std::vector<Lexicon::Entry> entries;
    for (const auto &w : corpus.words) {
      PhonemeSequence phones(rng.UniformInt(3, 5));
      for (auto &p : phones) p = static_cast<PhoneId>(rng.UniformInt(0, config.num_phones - 1));
      if (rng.Bernoulli(kSecondPronProb)) {
        PhonemeSequence variant = phones;
        const size_t pos = rng.UniformInt(0, variant.size() - 1);
        const PhoneId shift = static_cast<PhoneId>(rng.UniformInt(1, config.num_phones - 1));
        variant[pos] = (variant[pos] + shift) % config.num_phones;
        entries.push_back({w, phones, 1.0 - kSecondPronProb});
        entries.push_back({w, variant, kSecondPronProb});
      } else {
        entries.push_back({w, phones, 1.0});
      }
    }
    corpus.lexicon = Lexicon(entries, config.num_phones);
  }

  corpus.train = SampleTranscripts(config, corpus.words, cdf, "train",
                                   config.train_utterances);
  corpus.dev = SampleTranscripts(config, corpus.words, cdf, "dev",
                                 config.dev_utterances);
  corpus.test = SampleTranscripts(config, corpus.words, cdf, "test",
                                  config.test_utterances);
  corpus.lm_text = SampleTranscripts(config, corpus.words, cdf, "lmtext",
                                     config.lm_text_utterances);
  return corpus;
}

PosteriorMatrix GeneratePosteriors(const SynthCorpus &corpus,
                                   const std::string &utt_id,
                                   const std::string &text, PosteriorMode mode) {
  const SynthConfig &config = corpus.config;
  const bool e2e = mode == PosteriorMode::kE2e;
  Rng rng(DeriveSeed(config.seed, (e2e ? "e2e:" : "phone:") + utt_id));
  const int32_t dim = e2e ? corpus.tokens.Size() : corpus.phones.Size();

  // Each span has one confusable symbol that attracts part of the wrong mass.
  struct Span {
    int32_t symbol;
    int32_t confuser;
    double true_mass;
    int64_t frames;
  };
  std::vector<Span> spans;
  const WordSequence written = SplitWhitespace(text);
  if (written.empty()) throw Error("synth: empty transcript for " + utt_id);

  std::map<size_t, std::vector<const TokenSequence *>> by_shape;
  std::map<size_t, std::vector<std::string>> words_by_shape;
  for (const auto &w : corpus.words) {
    const TokenSequence &toks = corpus.word_tokens.at(w);
    by_shape[toks.size()].push_back(&toks);
    words_by_shape[toks.size()].push_back(w);
  }
  // The spoken words, drawn from a stream shared by both modes.
  WordSequence words;
  {
    Rng swap(DeriveSeed(config.seed, "spoken:" + utt_id));
    for (const auto &w : written) {
      auto it = corpus.word_tokens.find(w);
      if (it == corpus.word_tokens.end()) throw Error("synth: OOV word " + w);
      const auto &group = words_by_shape[it->second.size()];
      if (swap.Bernoulli(config.swap_prob) && group.size() > 1) {
        const int64_t pick = swap.UniformInt(0, group.size() - 2);
        words.push_back(group[pick] == w ? group.back() : group[pick]);
      } else {
        words.push_back(w);
      }
    }
  }

  auto random_other = [&](int32_t symbol, int32_t first) {
    const int64_t pick = rng.UniformInt(first, dim - 2);
    return static_cast<int32_t>(pick >= symbol ? pick + 1 : pick);
  };
  if (e2e) {
    // Confusions are word-coherent: a word's pieces compete with the pieces
    // of another word of the same shape, blanks with single-piece words.
    std::vector<TokenId> single_piece;
    for (const auto *toks : by_shape[1]) single_piece.push_back((*toks)[0]);
    auto blank_span = [&](int64_t frames) {
      const int32_t confuser =
          single_piece.empty()
              ? random_other(kBlankId, 1)
              : single_piece[rng.UniformInt(0, single_piece.size() - 1)];
      spans.push_back({kBlankId, confuser, config.alpha, frames});
    };
    if (rng.Bernoulli(config.blank_prob)) blank_span(rng.UniformInt(1, config.max_frames));
    TokenId prev = kBlankId;
    for (const auto &w : words) {
      auto it = corpus.word_tokens.find(w);
      if (it == corpus.word_tokens.end()) throw Error("synth: OOV word " + w);
      const TokenSequence &toks = it->second;
      const auto &shape = by_shape[toks.size()];
      const TokenSequence *other = nullptr;
      if (shape.size() > 1) {
        const int64_t pick = rng.UniformInt(0, shape.size() - 2);
        other = shape[pick] == &toks ? shape[shape.size() - 1] : shape[pick];
      }
      for (size_t i = 0; i < toks.size(); ++i) {
        const TokenId id = toks[i];
        if (id == prev && spans.back().symbol != kBlankId) blank_span(1);
        const int32_t confuser = (other != nullptr && (*other)[i] != id)
                                     ? (*other)[i]
                                     : random_other(id, 1);
        const double mass = corpus.rare_token[id]
                                ? config.alpha * (1.0 - config.delta)
                                : config.alpha;
        spans.push_back(
            {id, confuser, mass, rng.UniformInt(config.min_frames, config.max_frames)});
        if (rng.Bernoulli(config.blank_prob)) {
          blank_span(rng.UniformInt(1, config.max_frames));
        }
        prev = id;
      }
    }
  } else {
    for (const auto &w : words) {
      const auto *prons = corpus.lexicon.Find(w);
      if (prons == nullptr) throw Error("synth: OOV word " + w);
      const double u = rng.Uniform01();
      double acc = 0.0;
      const Pronunciation *chosen = &prons->back();
      for (const auto &p : *prons) {
        acc += p.prior;
        if (u < acc) {
          chosen = &p;
          break;
        }
      }
      for (PhoneId p : chosen->phones) {
        const int32_t confuser = random_other(p, 0);
        spans.push_back({p, confuser, config.PhoneAlpha(),
                         rng.UniformInt(config.min_frames, config.max_frames)});
      }
    }
  }

  int64_t num_frames = 0;
  for (const auto &s : spans) num_frames += s.frames;
  std::vector<float> values;
  values.reserve(static_cast<size_t>(num_frames) * dim);
  std::vector<double> row(dim);
  for (const auto &span : spans) {
    const double share = rng.Uniform01();
    for (int64_t f = 0; f < span.frames; ++f) {
      double spread = 0.0;
      for (int32_t j = 0; j < dim; ++j) {
        const double u = rng.Uniform01();
        row[j] = j == span.symbol ? 0.0 : std::pow(u, config.noise_sharpness);
        spread += row[j];
      }
      double total = 0.0;
      for (int32_t j = 0; j < dim; ++j) {
        if (j == span.symbol) {
          row[j] = span.true_mass;
        } else {
          const double wrong = (1.0 - share) * row[j] / spread +
                               (j == span.confuser ? share : 0.0);
          row[j] = std::max((1.0 - span.true_mass) * wrong, kProbFloor);
        }
        total += row[j];
      }
      for (int32_t j = 0; j < dim; ++j) {
        values.push_back(static_cast<float>(std::log(row[j] / total)));
      }
    }
  }
  return PosteriorMatrix(static_cast<int32_t>(num_frames), dim, std::move(values));
}

}  // namespace amfuse
