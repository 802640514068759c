// cli/cmd-tune.cc

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

// Grid search for fusion weights on a scored dev N-best set.

#include <cstdio>
#include <fstream>
#include <iostream>

#include "amfuse/cli/cli-common.h"
#include "amfuse/fusion/fusion.h"

namespace amfuse {
namespace {

struct TuneOptions {
  std::string nbest;
  std::string ref;
  std::string vocab;
  std::vector<std::string> axes = {"am"};
  double step = 0.1;
  double max = 1.0;
  int max_nonzero = 2;
  std::string report;
  std::string out;
};

void RunTune(const TuneOptions &opts) {
  GridSpec spec;
  spec.step = opts.step;
  spec.max = opts.max;
  spec.max_nonzero = opts.max_nonzero;
  spec.tune_am = spec.tune_lm = spec.tune_ilm = false;
  for (const auto &a : opts.axes) {
    if (a == "am") {
      spec.tune_am = true;
    } else if (a == "lm") {
      spec.tune_lm = true;
    } else if (a == "ilm") {
      spec.tune_ilm = true;
    } else {
      throw UsageError("unknown axis '" + a + "' (expected am, lm, ilm)");
    }
  }
  std::vector<FusionWeights> grid;
  try {
    grid = MakeGrid(spec);
  } catch (const Error &e) {
    throw UsageError(e.what());
  }

  const Vocabulary vocab = Vocabulary::Read(opts.vocab, Vocabulary::Kind::kCtc);
  const auto refs = TranscriptMap(ReadTranscripts(opts.ref));
  std::vector<DevUtterance> dev;
  for (auto &list : ReadNBestFile(opts.nbest, vocab)) {
    auto it = refs.find(list.utt_id);
    if (it == refs.end()) throw Error("no reference for " + list.utt_id);
    dev.push_back({std::move(list), NormalizeText(it->second)});
  }
  const TuneResult result = TuneWeights(dev, grid, vocab);
  if (!opts.report.empty()) WriteTuneReport(opts.report, result);
  if (!opts.out.empty()) {
    std::ofstream out(opts.out);
    if (!out) throw Error("cannot write " + opts.out);
    out << "lambda-am = " << FormatDouble(result.best.am) << '\n'
        << "lambda-lm = " << FormatDouble(result.best.lm) << '\n'
        << "lambda-ilm = " << FormatDouble(result.best.ilm) << '\n';
  }
  char wer[32];
  std::snprintf(wer, sizeof(wer), "%.4f", result.wer);
  std::cout << "best lambda_am=" << FormatDouble(result.best.am)
            << " lambda_lm=" << FormatDouble(result.best.lm)
            << " lambda_ilm=" << FormatDouble(result.best.ilm) << " dev_wer=" << wer
            << '\n';
}

}  // namespace

void AddTuneCommand(CLI::App &root) {
  auto opts = std::make_shared<TuneOptions>();
  auto *sub = root.add_subcommand("tune", "Grid-search fusion weights on dev");
  AddConfigOption(sub);
  sub->add_option("--nbest", opts->nbest, "Dev N-best with AM scores")->required();
  sub->add_option("--ref", opts->ref, "Reference transcripts")->required();
  sub->add_option("--vocab", opts->vocab, "CTC token vocabulary")->required();
  sub->add_option("--axes", opts->axes, "Weights to search: am, lm, ilm")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--step", opts->step)->capture_default_str();
  sub->add_option("--max", opts->max)->capture_default_str();
  sub->add_option("--max-nonzero", opts->max_nonzero,
                  "Maximum number of nonzero weights per grid point")
      ->capture_default_str();
  sub->add_option("--report", opts->report, "Per-grid-point WER report");
  sub->add_option("--out", opts->out,
                  "Write the best weights as a rescore --config file");
  sub->final_callback([sub, opts]() {
    LogConfig(*sub);
    RunTune(*opts);
  });
}

}  // namespace amfuse
