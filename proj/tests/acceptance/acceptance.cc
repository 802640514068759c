// acceptance/acceptance.cc

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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amfuse/aligner/forced-aligner.h"
#include "amfuse/cli/cli-common.h"
#include "amfuse/decoder/ctc-prefix-beam-search.h"
#include "amfuse/eval/error-rate.h"
#include "amfuse/eval/ppl-buckets.h"
#include "amfuse/fusion/fusion.h"
#include "amfuse/ngram/ngram-model.h"
#include "oracles.h"

namespace amfuse {
namespace {

namespace fs = std::filesystem;

// Tolerances.
constexpr double kWerrTolPct = 0.01;
constexpr double kConservationTol = 1e-6;
constexpr double kViterbiTol = 1e-9;
constexpr double kArpaTol = 1e-6;
constexpr double kMinCorpusWerr = 0.05;
constexpr double kPipelineBudgetSecs = 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char *fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

// 1. WERR arithmetic.
Outcome WerrArithmetic() {
  const struct {
    double b, n, expected_pct;
  } cases[] = {{3.63, 3.11, 14.33}, {3.30, 2.85, 13.64}, {4.82, 4.70, 2.49},
               {11.75, 11.26, 4.17}, {3.95, 3.63, 8.10}};
  Outcome o{true, ""};
  for (const auto &c : cases) {
    const double pct = 100.0 * Werr(c.b, c.n);
    o.pass &= std::abs(pct - c.expected_pct) <= kWerrTolPct;
    o.detail += Fmt(o.detail.empty() ? "%.2f%%" : " %.2f%%", pct);
  }
  return o;
}

// 2. CTC conservation.
Outcome CtcConservation() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  const int kInstances = 100;
  for (int i = 0; i < kInstances; ++i) {
    const int T = 1 + rng() % 5, V = 2 + rng() % 2;
    const auto post = oracle::RandomPosteriors(rng, T, V);
    double total = 0.0;
    for (const auto &[labels, p] : oracle::AllLabelProbs(post)) {
      total += std::exp(CtcLabelLogProb(post, labels));
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return {worst <= kConservationTol,
          Fmt("%.0f instances, max |sum-1| = %.2e", kInstances, worst)};
}

// 3. Exhaustive beam vs brute-force argmax.
Outcome BeamEquivalence(const NGramModel &lm, const NGramModel &ilm) {
  std::mt19937_64 rng(1002);
  int matches = 0;
  const int kInstances = 150;
  for (int i = 0; i < kInstances; ++i) {
    const int T = 1 + rng() % 5, V = 2 + rng() % 2;
    std::vector<std::string> symbols = {"<blank>", "a", "b", "c"};
    symbols.resize(V);
    const Vocabulary vocab(symbols, Vocabulary::Kind::kCtc);
    const auto post = oracle::RandomPosteriors(rng, T, V);
    BeamConfig config;
    config.beam_width = 1000;
    config.n_best = 1;
    if (i % 3 >= 1) {
      config.lm = &lm;
      config.weights.lm = 0.1 + 0.1 * (rng() % 10);
    }
    if (i % 3 == 2) {
      config.ilm = &ilm;
      config.weights.ilm = 0.1 * (rng() % 6);
    }
    const auto nbest = CtcPrefixBeamSearch(vocab, config).Decode(post, "u");
    if (nbest.hypotheses.at(0).tokens == oracle::BruteForceArgmax(post, vocab, config).best) {
      ++matches;
    }
  }
  return {matches == kInstances, Fmt("%.0f/%.0f top-1 identical", matches, kInstances)};
}

// 4. Viterbi vs exhaustive path and segmentation enumeration.
Outcome ViterbiEquivalence() {
  std::mt19937_64 rng(1003);
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; checked < 120 && trial < 10000; ++trial) {
    const int num_phones = 2 + rng() % 3;
    std::vector<Lexicon::Entry> entries;
    for (int w = 0; w < 3; ++w) {
      const int prons = 1 + rng() % 2;
      for (int p = 0; p < prons; ++p) {
        PhonemeSequence phones(1 + rng() % 3);
        for (auto &ph : phones) ph = static_cast<PhoneId>(rng() % num_phones);
        entries.push_back({"w" + std::to_string(w), phones,
                           prons == 1 ? 1.0 : (p == 0 ? 0.7 : 0.3)});
      }
    }
    const Lexicon lex(entries, num_phones + 1);
    WordSequence words(1 + rng() % 2);
    for (auto &w : words) w = "w" + std::to_string(rng() % 3);
    ExpandOptions opts;
    if (rng() % 2) {
      opts.allow_silence = true;
      opts.silence_phone = num_phones;
    }
    const PronGraph graph = ExpandPronunciations(words, lex, opts);
    const int T = graph.MinPhonemes() + static_cast<int>(rng() % 4);
    const auto post = oracle::RandomPosteriors(rng, T, num_phones + 1);
    long combos = 0;
    double brute = kLogZero;
    for (const auto &[phones, weight] : oracle::GraphPaths(graph)) {
      brute = std::max(brute, weight + oracle::BestSegmentation(post, phones, {}, &combos));
    }
    if (combos > 200) continue;
    ++checked;
    worst = std::max(worst, std::abs(ViterbiAlign(post, graph).score - brute));
  }
  return {checked >= 100 && worst <= kViterbiTol,
          Fmt("%.0f instances, max |diff| = %.2e", checked, worst)};
}

// 5. AM fusion vs equivalent LM/ILM weights when am = e2e - ilm.
Outcome RankingIdentity() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> score(-40.0, 0.0), weight(0.0, 2.0);
  const Vocabulary vocab({"<blank>", "x"}, Vocabulary::Kind::kCtc);
  int same = 0;
  const int kBundles = 1000;
  for (int i = 0; i < kBundles; ++i) {
    NBestList nbest{"u", {}};
    const int n = 2 + rng() % 9;
    for (int k = 0; k < n; ++k) {
      Hypothesis h;
      h.tokens = TokenSequence(k + 1, 1);
      h.scores.e2e = score(rng);
      h.scores.lm = score(rng);
      h.scores.ilm = score(rng);
      h.scores.am = h.scores.e2e - h.scores.ilm;
      nbest.hypotheses.push_back(h);
    }
    const FusionWeights w{weight(rng), weight(rng), 0.0};
    NBestList a = nbest, b = nbest;
    SortByFusedScore(&a, w);
    SortByFusedScore(&b, EquivalentLmWeights(w));
    if (a == b) ++same;
  }
  return {same == kBundles, Fmt("%.0f/%.0f permutations equal", same, kBundles)};
}

// 6. Toy ARPA model against hand-derived scores.
Outcome ArpaCorrectness(const NGramModel &lm) {
  const struct {
    const char *text;
    bool eos;
    double expected;
  } cases[] = {
      {"a b", false, -2.995732273553991},  {"a b", true, -4.605170185988091},
      {"c", true, -4.31748811353631},      {"a a c", true, -5.521460917862246},
      {"b c a", false, -3.324236340526027},
  };
  double worst = 0.0;
  for (const auto &c : cases) {
    const auto words = SplitWhitespace(c.text);
    worst = std::max(worst, std::abs(lm.ScoreSequence(words, c.eos) - c.expected));
  }
  return {worst <= kArpaTol, Fmt("5 sequences, max |diff| = %.2e", worst)};
}

// The full command-line experiment, run through the in-process entry point.
void RunPipeline(const std::string &dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.begin(), "amfuse");
    for (auto &a : args) {
      if (a.rfind("@", 0) == 0) a = dir + "/" + a.substr(1);
    }
    const int code = Run(args);
    if (code != kExitOk) throw Error("pipeline step failed: " + args[1]);
  };
  std::ostringstream sink_out, sink_err;
  auto *old_out = std::cout.rdbuf(sink_out.rdbuf());
  auto *old_err = std::cerr.rdbuf(sink_err.rdbuf());
  try {
    run({"synth", "--config", std::string(AMFUSE_SOURCE_DIR) + "/conf/synth.conf",
         "--out-dir", dir});
    for (std::string s : {"dev", "test"}) {
      run({"decode", "--list", "@" + s + "_e2e.list", "--vocab", "@tokens.txt", "--beam",
           "10", "--nbest", "10", "--out", "@" + s + ".nbest", "--hyp",
           "@" + s + ".baseline.txt"});
      run({"rescore", "--nbest", "@" + s + ".nbest", "--phone-list",
           "@" + s + "_phone.list", "--lexicon", "@lexicon.tsv", "--phones",
           "@phones.txt", "--vocab", "@tokens.txt", "--out", "@" + s + ".am.nbest"});
    }
    run({"tune", "--nbest", "@dev.am.nbest", "--ref", "@dev.txt", "--vocab",
         "@tokens.txt", "--axes", "am", "--report", "@tune.tsv", "--out",
         "@weights.conf"});
    run({"rescore", "--config", "@weights.conf", "--nbest", "@test.am.nbest",
         "--phone-list", "@test_phone.list", "--lexicon", "@lexicon.tsv", "--phones",
         "@phones.txt", "--vocab", "@tokens.txt", "--out", "@test.fused.nbest", "--hyp",
         "@test.fused.txt"});
    run({"score", "--ref", "@test.txt", "--hyp", "@test.fused.txt", "--report",
         "@score.fused.tsv"});
    run({"buckets", "--ref", "@test.txt", "--baseline", "@test.baseline.txt", "--fused",
         "@test.fused.txt", "--lm", "@word_lm.arpa", "-k", "5", "--out", "@buckets.tsv"});
  } catch (...) {
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    std::cerr << sink_err.str();
    throw;
  }
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
}

struct Experiment {
  std::vector<BucketItem> items;
  std::vector<NBestList> nbest;
  std::vector<WordSequence> refs;
  Vocabulary vocab;
  std::string lambda;
};

Experiment LoadExperiment(const std::string &dir) {
  Experiment e;
  e.vocab = Vocabulary::Read(dir + "/tokens.txt", Vocabulary::Kind::kCtc);
  const auto base = TranscriptMap(ReadTranscripts(dir + "/test.baseline.txt"));
  const auto fused = TranscriptMap(ReadTranscripts(dir + "/test.fused.txt"));
  for (const auto &t : ReadTranscripts(dir + "/test.txt")) {
    e.items.push_back({NormalizeText(t.text), NormalizeText(base.at(t.utt_id)),
                       NormalizeText(fused.at(t.utt_id))});
  }
  e.nbest = ReadNBestFile(dir + "/test.nbest", e.vocab);
  for (const auto &item : e.items) e.refs.push_back(item.reference);
  std::ifstream conf(dir + "/weights.conf");
  std::getline(conf, e.lambda);
  return e;
}

// 7. Corpus WERR of tuned AM fusion over the first pass.
Outcome SyntheticExperiment(const Experiment &e, double pipeline_secs) {
  ErrorCounts base, fused, oracle_counts;
  for (size_t i = 0; i < e.items.size(); ++i) {
    base += WordErrors(e.items[i].reference, e.items[i].baseline);
    fused += WordErrors(e.items[i].reference, e.items[i].fused);
    oracle_counts += OracleErrors(e.nbest.at(i), e.refs[i], e.vocab).counts;
  }
  const double werr = Werr(base.Wer(), fused.Wer());
  const bool ordered =
      oracle_counts.Wer() <= fused.Wer() && fused.Wer() <= base.Wer();
  return {e.items.size() == 500 && werr >= kMinCorpusWerr && ordered &&
              pipeline_secs <= kPipelineBudgetSecs,
          Fmt("baseline %.4f fused %.4f oracle %.4f WERR %.2f%%", base.Wer(), fused.Wer(),
              oracle_counts.Wer(), 100 * werr) +
              " (" + e.lambda + Fmt(", pipeline %.1fs)", pipeline_secs)};
}

// 8. WERR trend across word-LM perplexity buckets.
Outcome BucketTrend(const Experiment &e, const std::string &dir) {
  const NGramModel word_lm = NGramModel::ReadArpa(dir + "/word_lm.arpa");
  const auto buckets = PplBuckets(e.items, word_lm, 5);
  std::string detail = "WERR by bucket:";
  for (const auto &b : buckets) detail += Fmt(" %.3f", b.werr);
  const double low = buckets.front().werr, high = buckets.back().werr;
  return {!std::isnan(low) && !std::isnan(high) && high > low, detail};
}

// 9. WER vs independent DP; oracle never above top-1.
Outcome EvaluationOracles(const Experiment &e) {
  std::mt19937_64 rng(1009);
  const char *alphabet[] = {"a", "b", "c", "d"};
  int exact = 0;
  for (int i = 0; i < 500; ++i) {
    WordSequence r(1 + rng() % 8), h(rng() % 9);
    for (auto &w : r) w = alphabet[rng() % 4];
    for (auto &w : h) w = alphabet[rng() % 4];
    if (WordErrors(r, h).Errors() == oracle::EditDistance(r, h)) ++exact;
  }
  ErrorCounts top, best;
  bool per_utt = true;
  for (size_t i = 0; i < e.nbest.size(); ++i) {
    const auto t = WordErrors(e.refs[i], HypothesisWords(e.nbest[i].hypotheses[0], e.vocab));
    const auto o = OracleErrors(e.nbest[i], e.refs[i], e.vocab).counts;
    per_utt &= o.Errors() <= t.Errors();
    top += t;
    best += o;
  }
  return {exact == 500 && per_utt && best.Wer() <= top.Wer(),
          Fmt("%.0f/500 exact; oracle %.4f <= top-1 %.4f", exact, best.Wer(), top.Wer())};
}

// 10. Two identical runs produce byte-identical artifacts.
Outcome Determinism(const std::string &a, const std::string &b) {
  auto slurp = [](const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  int files = 0, differing = 0;
  for (const auto &entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path other = fs::path(b) / fs::relative(entry.path(), a);
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  int files_b = 0;
  for (const auto &entry : fs::recursive_directory_iterator(b)) {
    files_b += entry.is_regular_file();
  }
  return {files > 0 && differing == 0 && files == files_b,
          Fmt("%.0f files, %.0f differ", files, differing)};
}

int Main() {
  int failures = 0;
  auto report = [&](int id, const std::function<Outcome()> &fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception &ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  };

  const NGramModel toy =
      NGramModel::ReadArpa(std::string(AMFUSE_TEST_DATA_DIR) + "/toy2gram.arpa");
  const NGramModel ilm =
      TrainNGram({{"a", "b"}, {"b", "b", "a"}, {"c"}, {"a", "a", "c"}}, {"a", "b", "c"}, 2);
  const std::string root = (fs::temp_directory_path() / "amfuse-acceptance").string();
  const std::string run_a = root + "/run-a", run_b = root + "/run-b";

  report(1, WerrArithmetic);
  report(2, CtcConservation);
  report(3, [&] { return BeamEquivalence(toy, ilm); });
  report(4, ViterbiEquivalence);
  report(5, RankingIdentity);
  report(6, [&] { return ArpaCorrectness(toy); });

  std::optional<Experiment> exp;
  std::string pipeline_error;
  double pipeline_secs = 0.0;
  try {
    const auto start = std::chrono::steady_clock::now();
    RunPipeline(run_a);
    pipeline_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    exp = LoadExperiment(run_a);
  } catch (const std::exception &ex) {
    pipeline_error = ex.what();
  }
  auto need = [&]() -> const Experiment & {
    if (!exp) throw Error("pipeline failed: " + pipeline_error);
    return *exp;
  };
  report(7, [&] { return SyntheticExperiment(need(), pipeline_secs); });
  report(8, [&] { return BucketTrend(need(), run_a); });
  report(9, [&] { return EvaluationOracles(need()); });
  report(10, [&] {
    need();
    RunPipeline(run_b);
    return Determinism(run_a, run_b);
  });
  fs::remove_all(root);
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace amfuse

int main() { return amfuse::Main(); }
