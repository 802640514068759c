// cli/cli-common.h

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

#ifndef AMFUSE_CLI_CLI_COMMON_H_
#define AMFUSE_CLI_CLI_COMMON_H_

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amfuse/core/hypothesis.h"
#include "amfuse/core/text-utils.h"

namespace amfuse {

// Bad flag combinations detected after parsing; exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string &what) : std::runtime_error(what) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// One line per utterance, "utt_id\tpath"; relative paths are resolved
// against the directory of the list file.
struct ListEntry {
  std::string utt_id;
  std::string path;
};
std::vector<ListEntry> ReadList(const std::string &path);
// Writes paths relative to the list file's directory when possible.
void WriteList(const std::string &path, const std::vector<ListEntry> &entries);

// Runs fn(0..n-1) on `jobs` threads. Exceptions are rethrown after all
// workers finish (lowest index first).
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)> &fn);

// Registers --config on a subcommand. The file holds "key = value" lines
// (key is a long flag name without dashes; '#' starts a comment) and is
// expanded into command-line flags before parsing; flags given explicitly
// take precedence.
void AddConfigOption(CLI::App *sub);
std::vector<std::string> ExpandConfigFile(const CLI::App &root,
                                          const std::vector<std::string> &args);

// Effective configuration of a subcommand, to stderr.
void LogConfig(const CLI::App &app);

void WriteHypTranscripts(const std::string &path,
                         const std::vector<NBestList> &lists,
                         const Vocabulary &vocab);

std::map<std::string, std::string> TranscriptMap(
    const std::vector<Transcript> &transcripts);

// Subcommand registration. Each adds itself to `root`; the command runs in
// the subcommand's final callback.
void AddSynthCommand(CLI::App &root);
void AddDecodeCommand(CLI::App &root);
void AddRescoreCommand(CLI::App &root);
void AddTuneCommand(CLI::App &root);
void AddScoreCommand(CLI::App &root);
void AddBucketsCommand(CLI::App &root);

int Run(int argc, const char *const *argv);
int Run(const std::vector<std::string> &args);  // args[0] is the program name

}  // namespace amfuse

#endif  // AMFUSE_CLI_CLI_COMMON_H_
