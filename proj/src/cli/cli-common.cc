// cli/cli-common.cc

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

#include "amfuse/cli/cli-common.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "amfuse/eval/error-rate.h"

namespace amfuse {

namespace fs = std::filesystem;

std::vector<ListEntry> ReadList(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open list file " + path);
  const fs::path base = fs::path(path).parent_path();
  std::vector<ListEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = SplitString(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw Error(path + ":" + std::to_string(lineno) + ": expected utt_id<TAB>path");
    }
    fs::path p(fields[1]);
    if (p.is_relative()) p = base / p;
    out.push_back({fields[0], p.string()});
  }
  return out;
}

void WriteList(const std::string &path, const std::vector<ListEntry> &entries) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  const fs::path base = fs::path(path).parent_path();
  for (const auto &e : entries) {
    fs::path p(e.path);
    std::string rel = p.lexically_relative(base.empty() ? fs::path(".") : base).string();
    if (rel.empty() || rel.starts_with("..")) rel = e.path;
    out << e.utt_id << '\t' << rel << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

void ParallelFor(size_t n, int jobs, const std::function<void(size_t)> &fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  const size_t num_threads = std::min<size_t>(jobs, n);
  for (size_t t = 0; t < num_threads; ++t) threads.emplace_back(worker);
  for (auto &t : threads) t.join();
  for (auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void AddConfigOption(CLI::App *sub) {
  sub->add_option("--config", "Read key = value options from a file");
}

std::vector<std::string> ExpandConfigFile(const CLI::App &root,
                                          const std::vector<std::string> &args) {
  if (args.size() < 2) return args;
  const CLI::App *sub = nullptr;
  try {
    sub = root.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound &) {
    return args;
  }
  std::string config_path;
  std::set<std::string> given;
  for (size_t i = 2; i < args.size(); ++i) {
    const std::string &a = args[i];
    if (!a.starts_with("--")) continue;
    const std::string name = a.substr(2, a.find('=') - 2);
    given.insert(name);
    if (name == "config") {
      if (a.find('=') != std::string::npos) {
        config_path = a.substr(a.find('=') + 1);
      } else if (i + 1 < args.size()) {
        config_path = args[i + 1];
      }
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw Error("cannot open config file " + config_path);
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    if (SplitWhitespace(line).empty()) continue;
    const size_t eq = line.find('=');
    const auto key_fields = SplitWhitespace(line.substr(0, eq));
    if (eq == std::string::npos || key_fields.size() != 1) {
      throw UsageError(config_path + ":" + std::to_string(lineno) +
                       ": expected key = value");
    }
    std::string key = key_fields[0];
    std::replace(key.begin(), key.end(), '_', '-');
    std::string value(line.substr(eq + 1));
    const auto value_fields = SplitWhitespace(value);
    value = value_fields.empty() ? "" : value.substr(value.find(value_fields.front()));
    while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) {
      value.pop_back();
    }
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    const CLI::Option *opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw UsageError(config_path + ": unknown option '" + key + "'");
    }
    if (given.count(key)) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes") {
        extra.push_back("--" + key);
      } else if (!(value == "false" || value == "0" || value == "no")) {
        throw UsageError(config_path + ": bad boolean for '" + key + "'");
      }
    } else {
      extra.push_back("--" + key + "=" + value);
    }
  }
  std::vector<std::string> out = args;
  out.insert(out.begin() + 2, extra.begin(), extra.end());
  return out;
}

void LogConfig(const CLI::App &app) {
  std::cerr << "# amfuse " << app.get_name() << '\n'
            << app.config_to_str(true, false);
}

void WriteHypTranscripts(const std::string &path,
                         const std::vector<NBestList> &lists,
                         const Vocabulary &vocab) {
  std::vector<Transcript> out;
  for (const auto &l : lists) {
    std::string text;
    if (!l.hypotheses.empty()) {
      text = JoinWords(HypothesisWords(l.hypotheses.front(), vocab));
    }
    out.push_back({l.utt_id, text});
  }
  WriteTranscripts(path, out);
}

std::map<std::string, std::string> TranscriptMap(
    const std::vector<Transcript> &transcripts) {
  std::map<std::string, std::string> out;
  for (const auto &t : transcripts) out[t.utt_id] = t.text;
  return out;
}

int Run(const std::vector<std::string> &raw_args) {
  CLI::App app{"AM fusion toolkit: synth, decode, rescore, tune, score, buckets"};
  app.require_subcommand(1);
  AddSynthCommand(app);
  AddDecodeCommand(app);
  AddRescoreCommand(app);
  AddTuneCommand(app);
  AddScoreCommand(app);
  AddBucketsCommand(app);
  try {
    const std::vector<std::string> args = ExpandConfigFile(app, raw_args);
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

int Run(int argc, const char *const *argv) {
  return Run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace amfuse
