// cli/cmd-rescore.cc

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

// Second pass: fills AM scores from phoneme posteriors by forced alignment
// and re-ranks N-best lists by the fused score.

#include <cmath>
#include <iostream>
#include <map>
#include <optional>

#include "amfuse/cli/cli-common.h"
#include "amfuse/fusion/fusion.h"

namespace amfuse {
namespace {

struct RescoreOptions {
  std::string nbest;
  std::string phone_posteriors;
  std::string phone_list;
  std::string lexicon;
  std::string phones;
  std::string vocab;
  std::string word_lm;
  std::string silence;
  bool no_pron_priors = false;
  bool map_oov_to_unk = false;
  std::string oov_policy = "floor";
  double am_floor = std::log(1e-4);
  double lambda_am = 0.0;
  double lambda_lm = 0.0;
  double lambda_ilm = 0.0;
  std::string out;
  std::string hyp;
  int jobs = 1;
};

void RunRescore(const RescoreOptions &opts) {
  if (!opts.phone_posteriors.empty() && !opts.phone_list.empty()) {
    throw UsageError("--phoneme-posteriors and --phone-list are exclusive");
  }
  const bool have_am = !opts.phone_posteriors.empty() || !opts.phone_list.empty();
  if (have_am && (opts.lexicon.empty() || opts.phones.empty())) {
    throw UsageError("AM scoring needs --lexicon and --phones");
  }
  if (!have_am && opts.lambda_am != 0.0) {
    throw UsageError("--lambda-am > 0 needs phoneme posteriors");
  }
  FusionWeights weights{opts.lambda_am, opts.lambda_lm, opts.lambda_ilm};
  try {
    weights.Validate();
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  AmScoreOptions am_opts;
  if (opts.oov_policy == "floor") {
    am_opts.oov_policy = OovPolicy::kFloor;
  } else if (opts.oov_policy == "strict") {
    am_opts.oov_policy = OovPolicy::kStrict;
  } else {
    throw UsageError("--oov-policy must be floor or strict");
  }
  am_opts.floor_per_frame = opts.am_floor;
  am_opts.expand.use_priors = !opts.no_pron_priors;

  const Vocabulary vocab = Vocabulary::Read(opts.vocab, Vocabulary::Kind::kCtc);
  std::vector<NBestList> lists = ReadNBestFile(opts.nbest, vocab);

  std::optional<Vocabulary> phones;
  Lexicon lexicon;
  std::map<std::string, std::string> phone_paths;
  if (have_am) {
    phones = Vocabulary::Read(opts.phones, Vocabulary::Kind::kPlain);
    lexicon = Lexicon::Read(opts.lexicon, *phones);
    if (!opts.silence.empty()) {
      am_opts.expand.allow_silence = true;
      am_opts.expand.silence_phone = phones->Id(opts.silence);
    }
    if (!opts.phone_list.empty()) {
      for (const auto &e : ReadList(opts.phone_list)) phone_paths[e.utt_id] = e.path;
    } else {
      if (lists.size() != 1) {
        throw UsageError("--phoneme-posteriors needs a single-utterance N-best; use --phone-list");
      }
      phone_paths[lists[0].utt_id] = opts.phone_posteriors;
    }
  }
  std::optional<NGramModel> word_lm;
  NGramOptions lm_opts;
  lm_opts.map_oov_to_unk = opts.map_oov_to_unk;
  if (!opts.word_lm.empty()) word_lm = NGramModel::ReadArpa(opts.word_lm);

  ParallelFor(lists.size(), opts.jobs, [&](size_t i) {
    NBestList &list = lists[i];
    if (word_lm) list = ApplyWordLm(list, *word_lm, vocab, lm_opts);
    if (have_am) {
      auto it = phone_paths.find(list.utt_id);
      if (it == phone_paths.end()) {
        throw Error("no phoneme posteriors for " + list.utt_id);
      }
      const auto post = PosteriorMatrix::Read(it->second);
      list = RescoreNBest(list, post, lexicon, vocab, weights, am_opts);
    } else {
      SortByFusedScore(&list, weights);
    }
  });
  WriteNBestFile(opts.out, lists, vocab);
  if (!opts.hyp.empty()) WriteHypTranscripts(opts.hyp, lists, vocab);
  std::cerr << "rescore: " << lists.size() << " utterances\n";
}

}  // namespace

void AddRescoreCommand(CLI::App &root) {
  auto opts = std::make_shared<RescoreOptions>();
  auto *sub = root.add_subcommand("rescore", "AM fusion N-best rescoring");
  AddConfigOption(sub);
  sub->add_option("--nbest", opts->nbest, "Input N-best file")->required();
  sub->add_option("--phoneme-posteriors", opts->phone_posteriors,
                  "FPM1 phoneme posteriors (single utterance)");
  sub->add_option("--phone-list", opts->phone_list,
                  "List file of utt_id<TAB>phoneme posteriors");
  sub->add_option("--lexicon", opts->lexicon, "Pronunciation lexicon");
  sub->add_option("--phones", opts->phones, "Phoneme inventory");
  sub->add_option("--vocab", opts->vocab, "CTC token vocabulary")->required();
  sub->add_option("--word-lm", opts->word_lm,
                  "Word-level ARPA LM replacing the lm score column");
  sub->add_option("--silence", opts->silence,
                  "Optional silence phoneme between words");
  sub->add_flag("--map-oov-to-unk", opts->map_oov_to_unk,
                "Score words missing from --word-lm as <unk>");
  sub->add_flag("--no-pron-priors", opts->no_pron_priors,
                "Ignore pronunciation probabilities");
  sub->add_option("--oov-policy", opts->oov_policy, "floor or strict")
      ->capture_default_str();
  sub->add_option("--am-floor", opts->am_floor,
                  "Per-frame AM score for words outside the lexicon")
      ->capture_default_str();
  sub->add_option("--lambda-am", opts->lambda_am)->capture_default_str();
  sub->add_option("--lambda-lm", opts->lambda_lm)->capture_default_str();
  sub->add_option("--lambda-ilm", opts->lambda_ilm)->capture_default_str();
  sub->add_option("--out", opts->out, "Output N-best file")->required();
  sub->add_option("--hyp", opts->hyp, "Also write top-1 transcripts here");
  sub->add_option("--jobs", opts->jobs)->capture_default_str();
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunRescore(*opts);
  });
}

}  // namespace amfuse
