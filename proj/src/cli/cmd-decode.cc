// cli/cmd-decode.cc

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

// First-pass CTC prefix beam search with optional shallow fusion.

#include <filesystem>
#include <iostream>
#include <optional>

#include "amfuse/cli/cli-common.h"
#include "amfuse/decoder/ctc-prefix-beam-search.h"

namespace amfuse {
namespace {

struct DecodeOptions {
  std::string posteriors;
  std::string utt_id;
  std::string list;
  std::string vocab;
  std::string lm;
  std::string ilm;
  int beam = 10;
  int nbest = 10;
  double lambda_lm = 0.0;
  double lambda_ilm = 0.0;
  bool map_oov_to_unk = false;
  std::string out;
  std::string hyp;
  int jobs = 1;
};

void RunDecode(const DecodeOptions &opts) {
  if (opts.posteriors.empty() == opts.list.empty()) {
    throw UsageError("exactly one of --posteriors and --list is required");
  }
  std::vector<ListEntry> inputs;
  if (!opts.list.empty()) {
    inputs = ReadList(opts.list);
  } else {
    std::string id = opts.utt_id.empty()
                         ? std::filesystem::path(opts.posteriors).stem().string()
                         : opts.utt_id;
    inputs.push_back({id, opts.posteriors});
  }
  const Vocabulary vocab = Vocabulary::Read(opts.vocab, Vocabulary::Kind::kCtc);
  std::optional<NGramModel> lm, ilm;
  if (!opts.lm.empty()) lm = NGramModel::ReadArpa(opts.lm);
  if (!opts.ilm.empty()) ilm = NGramModel::ReadArpa(opts.ilm);

  BeamConfig config;
  config.beam_width = opts.beam;
  config.n_best = opts.nbest;
  config.weights.lm = opts.lambda_lm;
  config.weights.ilm = opts.lambda_ilm;
  config.lm = lm ? &*lm : nullptr;
  config.ilm = ilm ? &*ilm : nullptr;
  config.lm_options.map_oov_to_unk = opts.map_oov_to_unk;
  try {
    config.Validate();
  } catch (const Error &e) {
    throw UsageError(e.what());
  }
  const CtcPrefixBeamSearch decoder(vocab, config);

  std::vector<NBestList> results(inputs.size());
  ParallelFor(inputs.size(), opts.jobs, [&](size_t i) {
    const auto post = PosteriorMatrix::Read(inputs[i].path);
    results[i] = decoder.Decode(post, inputs[i].utt_id);
  });
  WriteNBestFile(opts.out, results, vocab);
  if (!opts.hyp.empty()) WriteHypTranscripts(opts.hyp, results, vocab);
  std::cerr << "decode: " << results.size() << " utterances\n";
}

}  // namespace

void AddDecodeCommand(CLI::App &root) {
  auto opts = std::make_shared<DecodeOptions>();
  auto *sub = root.add_subcommand("decode", "CTC prefix beam search");
  AddConfigOption(sub);
  sub->add_option("--posteriors", opts->posteriors, "FPM1 posterior file");
  sub->add_option("--utt-id", opts->utt_id,
                  "Utterance id for --posteriors (default: file stem)");
  sub->add_option("--list", opts->list, "List file of utt_id<TAB>posteriors");
  sub->add_option("--vocab", opts->vocab, "CTC token vocabulary")->required();
  sub->add_option("--lm", opts->lm, "External token LM (ARPA)");
  sub->add_option("--ilm", opts->ilm, "Internal LM estimate (ARPA)");
  sub->add_option("--beam", opts->beam)->capture_default_str();
  sub->add_option("--nbest", opts->nbest)->capture_default_str();
  sub->add_option("--lambda-lm", opts->lambda_lm)->capture_default_str();
  sub->add_option("--lambda-ilm", opts->lambda_ilm)->capture_default_str();
  sub->add_flag("--map-oov-to-unk", opts->map_oov_to_unk);
  sub->add_option("--out", opts->out, "Output N-best file")->required();
  sub->add_option("--hyp", opts->hyp, "Also write top-1 transcripts here");
  sub->add_option("--jobs", opts->jobs)->capture_default_str();
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunDecode(*opts);
  });
}

}  // namespace amfuse
