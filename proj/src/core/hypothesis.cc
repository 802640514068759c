// core/hypothesis.cc

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

#include "amfuse/core/hypothesis.h"

#include <cmath>
#include <fstream>
#include <set>

namespace amfuse {

void FusionWeights::Validate() const {
  for (double w : {am, lm, ilm}) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error("fusion weights must be finite and non-negative");
    }
  }
}

void ValidateNBest(const NBestList &nbest, const Vocabulary &vocab,
                   size_t max_size) {
  if (nbest.hypotheses.empty()) {
    throw Error("empty N-best list for " + nbest.utt_id);
  }
  if (max_size > 0 && nbest.hypotheses.size() > max_size) {
    throw Error("N-best list for " + nbest.utt_id + " exceeds size limit");
  }
  std::set<TokenSequence> seen;
  for (const auto &hyp : nbest.hypotheses) {
    for (TokenId id : hyp.tokens) {
      if (!vocab.IsValid(id) || (vocab.IsCtc() && id == kBlankId)) {
        throw Error("invalid token id in N-best list for " + nbest.utt_id);
      }
    }
    if (!seen.insert(hyp.tokens).second) {
      throw Error("duplicate hypothesis in N-best list for " + nbest.utt_id);
    }
  }
}

void WriteNBest(std::ostream &out, const NBestList &nbest,
                const Vocabulary &vocab) {
  int rank = 1;
  for (const auto &hyp : nbest.hypotheses) {
    out << nbest.utt_id << '\t' << rank++ << '\t' << FormatDouble(hyp.scores.e2e)
        << '\t' << FormatDouble(hyp.scores.lm) << '\t'
        << FormatDouble(hyp.scores.ilm) << '\t'
        << (hyp.scores.am ? FormatDouble(*hyp.scores.am) : std::string("NA"))
        << '\t';
    for (size_t i = 0; i < hyp.tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << vocab.Symbol(hyp.tokens[i]);
    }
    out << '\n';
  }
}

void WriteNBestFile(const std::string &path,
                    const std::vector<NBestList> &lists,
                    const Vocabulary &vocab) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write N-best file: " + path);
  for (const auto &nbest : lists) WriteNBest(out, nbest, vocab);
}

std::vector<NBestList> ReadNBestFile(const std::string &path,
                                     const Vocabulary &vocab) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open N-best file: " + path);
  std::vector<NBestList> lists;
  std::set<std::string> finished;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    const auto fields = SplitString(line, '\t');
    if (fields.size() != 7) throw Error(where + "expected 7 tab-separated fields");
    const std::string &utt = fields[0];
    if (lists.empty() || lists.back().utt_id != utt) {
      if (!lists.empty()) finished.insert(lists.back().utt_id);
      if (finished.count(utt)) {
        throw Error(where + "N-best rows for " + utt + " are not contiguous");
      }
      lists.push_back({utt, {}});
    }
    auto &nbest = lists.back();
    if (fields[1] != std::to_string(nbest.hypotheses.size() + 1)) {
      throw Error(where + "unexpected rank " + fields[1]);
    }
    Hypothesis hyp;
    try {
      hyp.scores.e2e = ParseDouble(fields[2]);
      hyp.scores.lm = ParseDouble(fields[3]);
      hyp.scores.ilm = ParseDouble(fields[4]);
      if (fields[5] != "NA") hyp.scores.am = ParseDouble(fields[5]);
      for (const auto &sym : SplitWhitespace(fields[6])) {
        hyp.tokens.push_back(vocab.Id(sym));
      }
    } catch (const Error &e) {
      throw Error(where + e.what());
    }
    nbest.hypotheses.push_back(std::move(hyp));
  }
  for (const auto &nbest : lists) ValidateNBest(nbest, vocab);
  return lists;
}

}  // namespace amfuse
