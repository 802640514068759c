// core/lexicon.h

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

#ifndef AMFUSE_CORE_LEXICON_H_
#define AMFUSE_CORE_LEXICON_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "amfuse/core/log-math.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

using PhonemeSequence = std::vector<PhoneId>;

struct Pronunciation {
  PhonemeSequence phones;
  double prior = 1.0;  // P(pronunciation | word), linear domain.

  bool operator==(const Pronunciation &) const = default;
};

// word -> pronunciations with priors that sum to one per word.
class Lexicon {
 public:
  // A pronunciation entry before normalization; `prior` absent means the
  // word's priors are uniform. Either every entry of a word carries a prior
  // or none does.
  struct Entry {
    std::string word;
    PhonemeSequence phones;
    std::optional<double> prior;
  };

  Lexicon() = default;
  Lexicon(const std::vector<Entry> &entries, int32_t num_phones);

  // TSV: word, optional probability, space-separated phonemes.
  static Lexicon Read(const std::string &path, const Vocabulary &phones);
  void Write(const std::string &path, const Vocabulary &phones) const;

  // nullptr for OOV words.
  const std::vector<Pronunciation> *Find(const std::string &word) const;
  bool Contains(const std::string &word) const { return Find(word) != nullptr; }
  size_t NumWords() const { return words_.size(); }
  int32_t NumPhones() const { return num_phones_; }
  const std::map<std::string, std::vector<Pronunciation>> &Words() const {
    return words_;
  }

 private:
  std::map<std::string, std::vector<Pronunciation>> words_;
  int32_t num_phones_ = 0;
};

}  // namespace amfuse

#endif  // AMFUSE_CORE_LEXICON_H_
