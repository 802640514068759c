// core/lexicon.cc

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

#include "amfuse/core/lexicon.h"

#include <charconv>
#include <fstream>

#include "amfuse/core/text-utils.h"

namespace amfuse {

Lexicon::Lexicon(const std::vector<Entry> &entries, int32_t num_phones)
    : num_phones_(num_phones) {
  std::map<std::string, std::vector<const Entry *>> grouped;
  for (const auto &e : entries) {
    if (e.word.empty()) throw Error("empty word in lexicon");
    if (e.phones.empty()) throw Error("empty pronunciation for word: " + e.word);
    for (PhoneId p : e.phones) {
      if (p < 0 || p >= num_phones) {
        throw Error("unknown phoneme id " + std::to_string(p) + " in word: " +
                    e.word);
      }
    }
    if (e.prior && !(*e.prior > 0.0 && *e.prior <= 1.0)) {
      throw Error("probability outside (0,1] for word: " + e.word);
    }
    grouped[e.word].push_back(&e);
  }
  for (const auto &[word, group] : grouped) {
    const bool has_prior = group.front()->prior.has_value();
    double total = 0.0;
    for (const Entry *e : group) {
      if (e->prior.has_value() != has_prior) {
        throw Error("mixed explicit and implicit probabilities for word: " +
                    word);
      }
      total += has_prior ? *e->prior : 1.0;
    }
    auto &prons = words_[word];
    for (const Entry *e : group) {
      prons.push_back({e->phones, (has_prior ? *e->prior : 1.0) / total});
    }
  }
}

Lexicon Lexicon::Read(const std::string &path, const Vocabulary &phones) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file: " + path);
  std::vector<Entry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    auto fields = SplitString(line, '\t');
    if (fields.size() != 2 && fields.size() != 3) {
      throw Error(where + "expected 2 or 3 tab-separated fields");
    }
    Entry entry;
    entry.word = fields[0];
    if (fields.size() == 3) {
      double prob = 0.0;
      const auto &s = fields[1];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), prob);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error(where + "malformed probability: " + s);
      }
      if (!(prob > 0.0 && prob <= 1.0)) {
        throw Error(where + "probability outside (0,1]");
      }
      entry.prior = prob;
    }
    const auto symbols = SplitWhitespace(fields.back());
    if (symbols.empty()) throw Error(where + "empty pronunciation");
    for (const auto &sym : symbols) {
      auto id = phones.Find(sym);
      if (!id) throw Error(where + "unknown phoneme symbol: " + sym);
      entry.phones.push_back(*id);
    }
    entries.push_back(std::move(entry));
  }
  try {
    return Lexicon(entries, phones.Size());
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void Lexicon::Write(const std::string &path, const Vocabulary &phones) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write lexicon file: " + path);
  for (const auto &[word, prons] : words_) {
    for (const auto &pron : prons) {
      out << word << '\t' << FormatDouble(pron.prior) << '\t';
      for (size_t i = 0; i < pron.phones.size(); ++i) {
        if (i > 0) out << ' ';
        out << phones.Symbol(pron.phones[i]);
      }
      out << '\n';
    }
  }
}

const std::vector<Pronunciation> *Lexicon::Find(const std::string &word) const {
  auto it = words_.find(word);
  return it == words_.end() ? nullptr : &it->second;
}

}  // namespace amfuse
