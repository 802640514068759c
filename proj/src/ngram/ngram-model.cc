// ngram/ngram-model.cc

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

#include "amfuse/ngram/ngram-model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "amfuse/core/text-utils.h"

namespace amfuse {
namespace {

constexpr double kLn10 = std::numbers::ln10;

std::string Trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

size_t NGramModel::KeyHash::operator()(const Key &k) const {
  uint64_t h = 1469598103934665603ull;
  for (int32_t i = 0; i < k.len; ++i) {
    h ^= static_cast<uint32_t>(k.ids[i]);
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

NGramModel::Key NGramModel::MakeKey(std::span<const int32_t> ids) {
  Key key;
  key.len = static_cast<int32_t>(ids.size());
  std::copy(ids.begin(), ids.end(), key.ids.begin());
  return key;
}

const NGramModel::Entry *NGramModel::Find(std::span<const int32_t> ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const auto &table = tables_[ngram.size() - 1];
  auto it = table.find(MakeKey(ngram));
  return it == table.end() ? nullptr : &it->second;
}

void NGramModel::Insert(std::span<const int32_t> ngram, const Entry &entry) {
  if (std::isnan(entry.log_prob) || entry.log_prob > 0.0) {
    throw Error("log probability must be <= 0");
  }
  if (std::isnan(entry.backoff)) throw Error("NaN backoff weight");
  for (int32_t id : ngram) {
    if (!vocab_.IsValid(id)) throw Error("n-gram word id out of range");
  }
  if (!tables_[ngram.size() - 1].emplace(MakeKey(ngram), entry).second) {
    throw Error("duplicate n-gram");
  }
}

NGramModel::NGramModel(std::vector<std::string> words,
                       const std::vector<std::vector<NGram>> &tables) {
  order_ = static_cast<int>(tables.size());
  if (order_ < 1) throw Error("n-gram model needs at least unigrams");
  if (order_ > kMaxOrder) {
    throw Error("n-gram order " + std::to_string(order_) + " exceeds maximum " +
                std::to_string(kMaxOrder));
  }
  vocab_ = Vocabulary(std::move(words), Vocabulary::Kind::kPlain);
  tables_.resize(order_);
  for (int n = 1; n <= order_; ++n) {
    for (const auto &ng : tables[n - 1]) {
      if (static_cast<int>(ng.words.size()) != n) {
        throw Error("malformed line: " + std::to_string(n) +
                    "-gram with wrong arity");
      }
      Insert(ng.words, ng.entry);
    }
  }
  if (tables_[0].size() != static_cast<size_t>(vocab_.Size())) {
    throw Error("every vocabulary word needs a unigram entry");
  }
  for (int n = 2; n <= order_; ++n) {
    for (const auto &[key, entry] : tables_[n - 1]) {
      std::span<const int32_t> ids(key.ids.data(), key.len);
      if (Find(ids.first(n - 1)) == nullptr) {
        std::string ngram;
        for (int32_t id : ids) ngram += vocab_.Symbol(id) + " ";
        throw Error("n-gram referencing unseen context: " + Trim(ngram));
      }
    }
  }
  Finalize();
}

void NGramModel::Finalize() {
  if (auto id = vocab_.Find(kBos)) bos_ = *id;
  if (auto id = vocab_.Find(kEos)) eos_ = *id;
  if (auto id = vocab_.Find(kUnk)) unk_ = *id;
}

NGramModel NGramModel::ReadArpa(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ARPA file: " + path);
  try {
    return ParseArpa(in);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

NGramModel NGramModel::ParseArpa(std::istream &in) {
  std::string line;
  bool in_data = false;
  std::map<int, size_t> declared;
  int section = 0;
  bool ended = false;
  std::vector<std::string> words;
  std::unordered_map<std::string, int32_t> word_ids;
  std::vector<std::vector<NGram>> tables;
  // Higher-order lines are resolved after the unigram section, which must
  // come first.
  while (std::getline(in, line)) {
    line = Trim(line);
    if (line.empty()) continue;
    if (line == "\\data\\") {
      in_data = true;
      continue;
    }
    if (line == "\\end\\") {
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      // "\N-grams:"
      const auto dash = line.find("-grams:");
      if (dash == std::string::npos || !in_data) {
        throw Error("malformed line: " + line);
      }
      section = std::stoi(line.substr(1, dash - 1));
      if (section != static_cast<int>(tables.size()) + 1) {
        throw Error("n-gram sections out of order at " + line);
      }
      tables.emplace_back();
      continue;
    }
    if (section == 0) {
      if (!in_data) continue;  // preamble
      if (!line.starts_with("ngram ")) throw Error("malformed line: " + line);
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw Error("malformed line: " + line);
      try {
        const int n = std::stoi(line.substr(6, eq - 6));
        declared[n] = static_cast<size_t>(std::stoull(line.substr(eq + 1)));
      } catch (const std::exception &) {
        throw Error("malformed line: " + line);
      }
      continue;
    }
    const auto fields = SplitWhitespace(line);
    const size_t n = static_cast<size_t>(section);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      throw Error("malformed line: " + line);
    }
    NGram ng;
    try {
      ng.entry.log_prob = ParseDouble(fields[0]) * kLn10;
      if (fields.size() == n + 2) ng.entry.backoff = ParseDouble(fields[n + 1]) * kLn10;
    } catch (const Error &) {
      throw Error("malformed line: " + line);
    }
    for (size_t i = 1; i <= n; ++i) {
      const auto &w = fields[i];
      if (n == 1) {
        if (word_ids.count(w)) throw Error("duplicate unigram: " + w);
        word_ids.emplace(w, static_cast<int32_t>(words.size()));
        words.push_back(w);
      }
      auto it = word_ids.find(w);
      if (it == word_ids.end()) {
        throw Error("n-gram referencing unseen context: word " + w +
                    " has no unigram");
      }
      ng.words.push_back(it->second);
    }
    tables.back().push_back(std::move(ng));
  }
  if (!in_data) throw Error("missing \\data\\ header");
  if (!ended) throw Error("missing \\end\\ marker");
  if (declared.size() != tables.size()) {
    throw Error("count mismatch: header declares " +
                std::to_string(declared.size()) + " orders, found " +
                std::to_string(tables.size()));
  }
  for (const auto &[n, count] : declared) {
    if (n < 1 || n > static_cast<int>(tables.size()) ||
        tables[n - 1].size() != count) {
      throw Error("count mismatch for order " + std::to_string(n) +
                  ": header says " + std::to_string(count));
    }
  }
  return NGramModel(std::move(words), tables);
}

void NGramModel::WriteArpa(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write ARPA file: " + path);
  out << "\n\\data\\\n";
  for (int n = 1; n <= order_; ++n) {
    out << "ngram " << n << "=" << tables_[n - 1].size() << "\n";
  }
  for (int n = 1; n <= order_; ++n) {
    out << "\n\\" << n << "-grams:\n";
    std::vector<std::pair<std::vector<int32_t>, Entry>> sorted;
    for (const auto &[key, entry] : tables_[n - 1]) {
      sorted.emplace_back(std::vector<int32_t>(key.ids.begin(),
                                               key.ids.begin() + key.len),
                          entry);
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &[ids, entry] : sorted) {
      out << FormatDouble(entry.log_prob / kLn10);
      for (size_t i = 0; i < ids.size(); ++i) {
        out << (i == 0 ? '\t' : ' ') << vocab_.Symbol(ids[i]);
      }
      if (n < order_) out << '\t' << FormatDouble(entry.backoff / kLn10);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

int32_t NGramModel::LookupWord(std::string_view word,
                               const NGramOptions &opts) const {
  if (auto id = vocab_.Find(word)) return *id;
  if (opts.map_oov_to_unk && unk_) return *unk_;
  throw Error("OOV token not in language model: " + std::string(word));
}

double NGramModel::LogProb(std::span<const int32_t> context, int32_t word) const {
  const size_t max_ctx = std::min(context.size(), static_cast<size_t>(order_ - 1));
  std::array<int32_t, kMaxOrder> buf{};
  double backoff = 0.0;
  for (size_t k = max_ctx + 1; k-- > 0;) {
    std::span<const int32_t> ctx = context.last(k);
    std::copy(ctx.begin(), ctx.end(), buf.begin());
    buf[k] = word;
    if (const Entry *e = Find(std::span<const int32_t>(buf.data(), k + 1))) {
      return backoff + e->log_prob;
    }
    if (k > 0) {
      if (const Entry *c = Find(ctx)) backoff += c->backoff;
    }
  }
  throw Error("word id has no unigram: " + std::to_string(word));
}

NGramModel::State NGramModel::BeginState() const {
  State state;
  if (bos_ >= 0 && order_ > 1) state.history.push_back(bos_);
  return state;
}

double NGramModel::Advance(State *state, int32_t word) const {
  const double lp = LogProb(state->history, word);
  if (order_ > 1) {
    state->history.push_back(word);
    if (static_cast<int>(state->history.size()) > order_ - 1) {
      state->history.erase(state->history.begin());
    }
  }
  return lp;
}

double NGramModel::ScoreIds(std::span<const int32_t> ids, bool include_eos) const {
  State state = BeginState();
  double total = 0.0;
  for (int32_t id : ids) total += Advance(&state, id);
  if (include_eos) {
    if (eos_ < 0) throw Error("language model has no </s> entry");
    total += Advance(&state, eos_);
  }
  return total;
}

double NGramModel::ScoreSequence(std::span<const std::string> tokens,
                                 bool include_eos,
                                 const NGramOptions &opts) const {
  std::vector<int32_t> ids;
  ids.reserve(tokens.size());
  for (const auto &t : tokens) ids.push_back(LookupWord(t, opts));
  return ScoreIds(ids, include_eos);
}

double NGramModel::Perplexity(std::span<const std::string> tokens,
                              const NGramOptions &opts) const {
  if (tokens.empty()) throw Error("perplexity needs at least one token");
  const double score = ScoreSequence(tokens, true, opts);
  return std::exp(-score / static_cast<double>(tokens.size() + 1));
}

}  // namespace amfuse
