// core/text-utils.h

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

#ifndef AMFUSE_CORE_TEXT_UTILS_H_
#define AMFUSE_CORE_TEXT_UTILS_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amfuse/core/log-math.h"
#include "amfuse/core/vocabulary.h"

namespace amfuse {

using TokenSequence = std::vector<TokenId>;
using WordSequence = std::vector<std::string>;

std::vector<std::string> SplitString(std::string_view s, char sep);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string JoinWords(const WordSequence &words);

// Shortest representation that parses back to the same double; "-inf" for
// kLogZero.
std::string FormatDouble(double v);
// Accepts everything FormatDouble produces. Throws Error otherwise.
double ParseDouble(std::string_view s);

// Wordpiece -> word bridge. A token starting with the word-boundary marker
// opens a new word (marker stripped); other tokens continue the current one.
// A leading continuation is an error unless `lenient`, in which case it
// becomes a word of its own (normally outside any lexicon).
WordSequence Detokenize(const TokenSequence &tokens, const Vocabulary &vocab,
                        bool lenient = false);
WordSequence Detokenize(const std::vector<std::string> &tokens,
                        bool lenient = false);

// Greedy longest-match segmentation of each word (prefixed with the
// boundary marker) into vocabulary symbols. Throws Error on words it
// cannot cover.
TokenSequence GreedyTokenize(const WordSequence &words, const Vocabulary &vocab);

// Lowercase + whitespace tokenization, used before WER scoring.
WordSequence NormalizeText(std::string_view text);

// "utt_id\ttext" per line; order preserved.
struct Transcript {
  std::string utt_id;
  std::string text;
};
std::vector<Transcript> ReadTranscripts(const std::string &path);
void WriteTranscripts(const std::string &path,
                      const std::vector<Transcript> &transcripts);

}  // namespace amfuse

#endif  // AMFUSE_CORE_TEXT_UTILS_H_
