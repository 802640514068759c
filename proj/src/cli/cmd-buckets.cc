// cli/cmd-buckets.cc

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

// WERR per reference-perplexity bucket.

#include <cstdio>
#include <iostream>

#include "amfuse/cli/cli-common.h"
#include "amfuse/eval/ppl-buckets.h"

namespace amfuse {
namespace {

struct BucketsOptions {
  std::string ref;
  std::string baseline;
  std::string fused;
  std::string lm;
  std::string vocab;
  int k = 5;
  bool map_oov_to_unk = false;
  std::string out;
};

void RunBuckets(const BucketsOptions &opts) {
  const auto refs = ReadTranscripts(opts.ref);
  const auto baseline = TranscriptMap(ReadTranscripts(opts.baseline));
  const auto fused = TranscriptMap(ReadTranscripts(opts.fused));
  auto words_of = [](const std::map<std::string, std::string> &m,
                     const std::string &id) {
    auto it = m.find(id);
    return it == m.end() ? WordSequence{} : NormalizeText(it->second);
  };
  std::vector<BucketItem> items;
  for (const auto &r : refs) {
    items.push_back({NormalizeText(r.text), words_of(baseline, r.utt_id),
                     words_of(fused, r.utt_id)});
  }
  const NGramModel lm = NGramModel::ReadArpa(opts.lm);
  std::optional<Vocabulary> vocab;
  if (!opts.vocab.empty()) vocab = Vocabulary::Read(opts.vocab, Vocabulary::Kind::kCtc);
  NGramOptions lm_opts;
  lm_opts.map_oov_to_unk = opts.map_oov_to_unk;
  if (opts.k < 1) throw UsageError("-k must be >= 1");
  const auto buckets = PplBuckets(items, lm, opts.k, vocab ? &*vocab : nullptr, lm_opts);
  if (opts.out.empty()) {
    WriteBucketReport(std::cout, buckets);
  } else {
    WriteBucketReport(opts.out, buckets);
  }
}

}  // namespace

void AddBucketsCommand(CLI::App &root) {
  auto opts = std::make_shared<BucketsOptions>();
  auto *sub = root.add_subcommand("buckets", "WERR by reference perplexity bucket");
  AddConfigOption(sub);
  sub->add_option("--ref", opts->ref, "Reference transcripts")->required();
  sub->add_option("--baseline", opts->baseline, "Baseline hypotheses")->required();
  sub->add_option("--fused", opts->fused, "Fused hypotheses")->required();
  sub->add_option("--lm", opts->lm, "Bucketing LM (ARPA)")->required();
  sub->add_option("--vocab", opts->vocab,
                  "Token vocabulary; references are tokenized for a token LM");
  sub->add_option("-k,--buckets", opts->k, "Number of buckets")->capture_default_str();
  sub->add_flag("--map-oov-to-unk", opts->map_oov_to_unk);
  sub->add_option("--out", opts->out, "Report path (default stdout)");
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunBuckets(*opts);
  });
}

}  // namespace amfuse
