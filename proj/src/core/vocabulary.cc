// core/vocabulary.cc

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

#include "amfuse/core/vocabulary.h"

#include <fstream>

namespace amfuse {

Vocabulary::Vocabulary(std::vector<std::string> symbols, Kind kind)
    : symbols_(std::move(symbols)), kind_(kind) {
  if (symbols_.empty()) throw Error("empty vocabulary");
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) {
      throw Error("empty symbol at vocabulary position " + std::to_string(i));
    }
    auto [it, inserted] =
        index_.emplace(symbols_[i], static_cast<int32_t>(i));
    if (!inserted) throw Error("duplicate vocabulary symbol: " + symbols_[i]);
  }
  if (kind_ == Kind::kCtc) {
    if (symbols_[0] != kBlankSymbol) {
      throw Error("CTC vocabulary must have <blank> at id 0");
    }
    if (symbols_.size() < 2) {
      throw Error("CTC vocabulary needs at least one non-blank symbol");
    }
  } else if (index_.count(std::string(kBlankSymbol)) != 0) {
    throw Error("<blank> is reserved for CTC vocabularies");
  }
}

Vocabulary Vocabulary::Read(const std::string &path, Kind kind) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open vocabulary file: " + path);
  std::vector<std::string> symbols;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    symbols.push_back(line);
  }
  return Vocabulary(std::move(symbols), kind);
}

void Vocabulary::Write(const std::string &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write vocabulary file: " + path);
  for (const auto &s : symbols_) out << s << '\n';
}

const std::string &Vocabulary::Symbol(int32_t id) const {
  if (!IsValid(id)) throw Error("token id out of range: " + std::to_string(id));
  return symbols_[id];
}

std::optional<int32_t> Vocabulary::Find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int32_t Vocabulary::Id(std::string_view symbol) const {
  auto id = Find(symbol);
  if (!id) throw Error("unknown symbol: " + std::string(symbol));
  return *id;
}

}  // namespace amfuse
