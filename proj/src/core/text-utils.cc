// core/text-utils.cc

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

#include "amfuse/core/text-utils.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace amfuse {

std::vector<std::string> SplitString(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> SplitWhitespace(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' ||
                            s[i] == '\n')) {
      ++i;
    }
    size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r' ||
                             s[j] == '\n')) {
      ++j;
    }
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string JoinWords(const WordSequence &words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += ' ';
    out += words[i];
  }
  return out;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, ptr);
}

double ParseDouble(std::string_view s) {
  if (s == "-inf") return kLogZero;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error("malformed number: " + std::string(s));
  }
  return v;
}

WordSequence Detokenize(const std::vector<std::string> &tokens, bool lenient) {
  WordSequence words;
  for (const auto &tok : tokens) {
    if (tok.starts_with(kWordBoundary)) {
      words.push_back(tok.substr(kWordBoundary.size()));
    } else if (words.empty()) {
      if (lenient) {
        words.push_back(tok);
        continue;
      }
      throw Error("dangling continuation: sequence starts with " + tok);
    } else {
      words.back() += tok;
    }
  }
  return words;
}

WordSequence Detokenize(const TokenSequence &tokens, const Vocabulary &vocab,
                        bool lenient) {
  std::vector<std::string> symbols;
  symbols.reserve(tokens.size());
  for (TokenId id : tokens) {
    if (vocab.IsCtc() && id == kBlankId) {
      throw Error("blank id inside a token sequence");
    }
    symbols.push_back(vocab.Symbol(id));
  }
  return Detokenize(symbols, lenient);
}

TokenSequence GreedyTokenize(const WordSequence &words, const Vocabulary &vocab) {
  size_t max_len = 0;
  for (const auto &s : vocab.Symbols()) max_len = std::max(max_len, s.size());
  TokenSequence out;
  for (const auto &word : words) {
    const std::string text = std::string(kWordBoundary) + word;
    size_t pos = 0;
    while (pos < text.size()) {
      size_t len = std::min(max_len, text.size() - pos);
      std::optional<int32_t> id;
      for (; len > 0; --len) {
        id = vocab.Find(std::string_view(text).substr(pos, len));
        if (id && !(vocab.IsCtc() && *id == kBlankId)) break;
        id.reset();
      }
      if (!id) throw Error("cannot tokenize word: " + word);
      out.push_back(*id);
      pos += len;
    }
  }
  return out;
}

WordSequence NormalizeText(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return SplitWhitespace(lower);
}

std::vector<Transcript> ReadTranscripts(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open transcript file: " + path);
  std::vector<Transcript> out;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    Transcript t;
    t.utt_id = line.substr(0, tab);
    if (tab != std::string::npos) t.text = line.substr(tab + 1);
    if (t.utt_id.empty()) {
      throw Error(path + ":" + std::to_string(line_no) + ": empty utterance id");
    }
    if (!seen.insert(t.utt_id).second) {
      throw Error(path + ": duplicate utterance id " + t.utt_id);
    }
    out.push_back(std::move(t));
  }
  return out;
}

void WriteTranscripts(const std::string &path,
                      const std::vector<Transcript> &transcripts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write transcript file: " + path);
  for (const auto &t : transcripts) out << t.utt_id << '\t' << t.text << '\n';
}

}  // namespace amfuse
