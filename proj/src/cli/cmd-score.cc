// cli/cmd-score.cc

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

// Corpus WER of transcripts or N-best lists, optionally oracle WER.

#include <cstdio>
#include <iostream>

#include "amfuse/cli/cli-common.h"
#include "amfuse/eval/error-rate.h"

namespace amfuse {
namespace {

struct ScoreOptions {
  std::string ref;
  std::string hyp;
  std::string nbest;
  std::string vocab;
  bool oracle = false;
  std::string report;
};

void PrintWer(const char *label, const ErrorCounts &c) {
  char line[160];
  std::snprintf(line, sizeof(line),
                "%s %.4f [ %lld / %lld, %lld ins, %lld del, %lld sub ]\n", label,
                c.Wer(), static_cast<long long>(c.Errors()),
                static_cast<long long>(c.ref_length),
                static_cast<long long>(c.insertions),
                static_cast<long long>(c.deletions),
                static_cast<long long>(c.substitutions));
  std::cout << line;
}

void RunScore(const ScoreOptions &opts) {
  if (opts.hyp.empty() == opts.nbest.empty()) {
    throw UsageError("exactly one of --hyp and --nbest is required");
  }
  if (!opts.nbest.empty() && opts.vocab.empty()) {
    throw UsageError("--nbest needs --vocab");
  }
  if (opts.oracle && opts.nbest.empty()) {
    throw UsageError("--oracle needs --nbest");
  }
  const auto refs = ReadTranscripts(opts.ref);

  // Top-1 words and, for N-best input, the oracle counts per utterance.
  std::map<std::string, WordSequence> top1;
  std::map<std::string, NBestList> lists;
  std::optional<Vocabulary> vocab;
  if (!opts.hyp.empty()) {
    for (const auto &t : ReadTranscripts(opts.hyp)) top1[t.utt_id] = NormalizeText(t.text);
  } else {
    vocab = Vocabulary::Read(opts.vocab, Vocabulary::Kind::kCtc);
    for (auto &l : ReadNBestFile(opts.nbest, *vocab)) {
      top1[l.utt_id] = l.hypotheses.empty() ? WordSequence{}
                                            : HypothesisWords(l.hypotheses[0], *vocab);
      lists[l.utt_id] = std::move(l);
    }
  }
  const auto ref_map = TranscriptMap(refs);
  for (const auto &[id, words] : top1) {
    if (!ref_map.count(id)) throw Error("hypothesis without reference: " + id);
  }

  ErrorCounts total, oracle_total;
  std::vector<UtteranceScore> per_utt;
  int missing = 0;
  for (const auto &r : refs) {
    const WordSequence ref = NormalizeText(r.text);
    WordSequence hyp;
    auto it = top1.find(r.utt_id);
    if (it == top1.end()) {
      ++missing;
    } else {
      hyp = it->second;
    }
    const ErrorCounts c = AlignErrors(ref, hyp);
    total += c;
    per_utt.push_back({r.utt_id, c});
    if (opts.oracle) {
      auto l = lists.find(r.utt_id);
      if (l == lists.end() || l->second.hypotheses.empty()) {
        oracle_total += c;
      } else {
        oracle_total += OracleErrors(l->second, ref, *vocab).counts;
      }
    }
  }
  if (missing > 0) {
    std::cerr << "score: warning: " << missing
              << " references without hypothesis scored as deletions\n";
  }
  if (!opts.report.empty()) WriteScoreReport(opts.report, per_utt);
  PrintWer("WER", total);
  if (opts.oracle) PrintWer("ORACLE_WER", oracle_total);
}

}  // namespace

void AddScoreCommand(CLI::App &root) {
  auto opts = std::make_shared<ScoreOptions>();
  auto *sub = root.add_subcommand("score", "Word error rate");
  AddConfigOption(sub);
  sub->add_option("--ref", opts->ref, "Reference transcripts")->required();
  sub->add_option("--hyp", opts->hyp, "Hypothesis transcripts");
  sub->add_option("--nbest", opts->nbest, "N-best file (top-1 is scored)");
  sub->add_option("--vocab", opts->vocab, "CTC token vocabulary for --nbest");
  sub->add_flag("--oracle", opts->oracle, "Also report oracle WER of the N-best");
  sub->add_option("--report", opts->report, "Per-utterance TSV report");
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunScore(*opts);
  });
}

}  // namespace amfuse
