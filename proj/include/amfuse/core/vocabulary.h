// core/vocabulary.h

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

#ifndef AMFUSE_CORE_VOCABULARY_H_
#define AMFUSE_CORE_VOCABULARY_H_

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "amfuse/core/log-math.h"

namespace amfuse {

inline constexpr std::string_view kBlankSymbol = "<blank>";
inline constexpr TokenId kBlankId = 0;
// U+2581 LOWER ONE EIGHTH BLOCK, UTF-8 encoded.
inline constexpr std::string_view kWordBoundary = "\xE2\x96\x81";

// Ordered symbol inventory; a symbol's id is its zero-based position.
// A CTC vocabulary carries "<blank>" exactly once, at id 0.
class Vocabulary {
 public:
  enum class Kind { kPlain, kCtc };

  Vocabulary() = default;
  Vocabulary(std::vector<std::string> symbols, Kind kind);

  // One symbol per line, UTF-8.
  static Vocabulary Read(const std::string &path, Kind kind);
  void Write(const std::string &path) const;

  int32_t Size() const { return static_cast<int32_t>(symbols_.size()); }
  bool IsCtc() const { return kind_ == Kind::kCtc; }
  bool IsValid(int32_t id) const { return id >= 0 && id < Size(); }

  const std::string &Symbol(int32_t id) const;
  std::optional<int32_t> Find(std::string_view symbol) const;
  // Throws Error when the symbol is unknown.
  int32_t Id(std::string_view symbol) const;

  const std::vector<std::string> &Symbols() const { return symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int32_t> index_;
  Kind kind_ = Kind::kPlain;
};

}  // namespace amfuse

#endif  // AMFUSE_CORE_VOCABULARY_H_
