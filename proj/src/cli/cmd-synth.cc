// cli/cmd-synth.cc

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

// Writes a synthetic corpus: vocabularies, lexicon, transcripts, external
// LMs, and per-utterance posteriors with list files.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "amfuse/cli/cli-common.h"
#include "amfuse/ngram/ngram-model.h"
#include "amfuse/synth/synth-corpus.h"

namespace amfuse {
namespace {

namespace fs = std::filesystem;

struct SynthOptions {
  SynthConfig config;
  std::string out_dir;
  int lm_order = 2;
  int jobs = 1;
  double phone_alpha = 0.0;
};

void WritePosteriorSet(const SynthCorpus &corpus,
                       const std::vector<Transcript> &set,
                       const std::string &name, const fs::path &dir, int jobs) {
  for (auto [mode, sub] : {std::pair{PosteriorMode::kE2e, "e2e"},
                           std::pair{PosteriorMode::kPhoneme, "phone"}}) {
    fs::create_directories(dir / sub);
    std::vector<ListEntry> entries(set.size());
    ParallelFor(set.size(), jobs, [&](size_t i) {
      const auto &t = set[i];
      const fs::path path = dir / sub / (t.utt_id + ".fpm");
      GeneratePosteriors(corpus, t.utt_id, t.text, mode).Write(path.string());
      entries[i] = {t.utt_id, path.string()};
    });
    WriteList((dir / (name + "_" + sub + ".list")).string(), entries);
  }
}

std::vector<std::vector<std::string>> TokenSentences(
    const SynthCorpus &corpus, const std::vector<Transcript> &set) {
  std::vector<std::vector<std::string>> out;
  for (const auto &t : set) out.push_back(corpus.TokenStrings(t.text));
  return out;
}

void RunSynth(SynthOptions opts) {
  if (opts.phone_alpha > 0.0) opts.config.phone_alpha = opts.phone_alpha;
  const fs::path dir(opts.out_dir);
  try {
    opts.config.Validate();
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  fs::create_directories(dir);
  const SynthCorpus corpus = GenerateCorpus(opts.config);

  corpus.tokens.Write((dir / "tokens.txt").string());
  corpus.phones.Write((dir / "phones.txt").string());
  corpus.lexicon.Write((dir / "lexicon.tsv").string(), corpus.phones);
  WriteTranscripts((dir / "train.txt").string(), corpus.train);
  WriteTranscripts((dir / "dev.txt").string(), corpus.dev);
  WriteTranscripts((dir / "test.txt").string(), corpus.test);
  WriteTranscripts((dir / "lmtext.txt").string(), corpus.lm_text);
  {
    std::ofstream rare(dir / "rare_tokens.txt");
    for (TokenId id = 1; id < corpus.tokens.Size(); ++id) {
      if (corpus.rare_token[id]) rare << corpus.tokens.Symbol(id) << '\n';
    }
  }

  std::vector<std::string> token_list(corpus.tokens.Symbols().begin() + 1,
                                      corpus.tokens.Symbols().end());
  // The internal LM sees only the paired training transcripts; the external
  // LMs also see the text-only data.
  TrainNGram(TokenSentences(corpus, corpus.train), token_list, opts.lm_order)
      .WriteArpa((dir / "ilm.arpa").string());
  auto lm_sentences = TokenSentences(corpus, corpus.train);
  auto extra = TokenSentences(corpus, corpus.lm_text);
  lm_sentences.insert(lm_sentences.end(), extra.begin(), extra.end());
  TrainNGram(lm_sentences, token_list, opts.lm_order)
      .WriteArpa((dir / "lm.arpa").string());
  std::vector<std::vector<std::string>> word_sentences;
  for (const auto *set : {&corpus.train, &corpus.lm_text}) {
    for (const auto &t : *set) word_sentences.push_back(SplitWhitespace(t.text));
  }
  std::vector<std::string> word_list = corpus.words;
  word_list.emplace_back(kUnk);
  TrainNGram(word_sentences, word_list, opts.lm_order)
      .WriteArpa((dir / "word_lm.arpa").string());

  WritePosteriorSet(corpus, corpus.dev, "dev", dir, opts.jobs);
  WritePosteriorSet(corpus, corpus.test, "test", dir, opts.jobs);
  std::cerr << "synth: " << corpus.tokens.Size() << " tokens, "
            << corpus.phones.Size() << " phones, " << corpus.words.size()
            << " words written to " << opts.out_dir << '\n';
}

}  // namespace

void AddSynthCommand(CLI::App &root) {
  auto opts = std::make_shared<SynthOptions>();
  auto *sub = root.add_subcommand("synth", "Generate a synthetic corpus");
  AddConfigOption(sub);
  auto &c = opts->config;
  sub->add_option("--out-dir", opts->out_dir, "Output directory")->required();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  sub->add_option("--num-words", c.num_words)->capture_default_str();
  sub->add_option("--num-phones", c.num_phones)->capture_default_str();
  sub->add_option("--zipf", c.zipf_exponent, "Zipf exponent")->capture_default_str();
  sub->add_option("--train", c.train_utterances)->capture_default_str();
  sub->add_option("--dev", c.dev_utterances)->capture_default_str();
  sub->add_option("--test", c.test_utterances)->capture_default_str();
  sub->add_option("--lm-text", c.lm_text_utterances)->capture_default_str();
  sub->add_option("--min-words", c.min_words)->capture_default_str();
  sub->add_option("--max-words", c.max_words)->capture_default_str();
  sub->add_option("--min-frames", c.min_frames)->capture_default_str();
  sub->add_option("--max-frames", c.max_frames)->capture_default_str();
  sub->add_option("--blank-prob", c.blank_prob)->capture_default_str();
  sub->add_option("--alpha", c.alpha, "True-symbol posterior mass")->capture_default_str();
  sub->add_option("--delta", c.delta, "Rare-token mass reduction (e2e only)")
      ->capture_default_str();
  sub->add_option("--phone-alpha", opts->phone_alpha,
                  "True-symbol mass of the phoneme AM (default: --alpha)");
  sub->add_option("--rare-quantile", c.rare_quantile)->capture_default_str();
  sub->add_option("--split-fraction", c.split_fraction)->capture_default_str();
  sub->add_option("--swap-prob", c.swap_prob,
                  "Probability a word is spoken as a same-shape word")
      ->capture_default_str();
  sub->add_option("--noise-sharpness", c.noise_sharpness)->capture_default_str();
  sub->add_option("--lm-order", opts->lm_order, "Order of the trained LMs")
      ->capture_default_str();
  sub->add_option("--jobs", opts->jobs)->capture_default_str();
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunSynth(*opts);
  });
}

}  // namespace amfuse
