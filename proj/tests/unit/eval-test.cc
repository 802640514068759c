// unit/eval-test.cc

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

#include <cmath>
#include <random>
#include <sstream>

#include "amfuse/eval/error-rate.h"
#include "amfuse/eval/ppl-buckets.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "test-util.h"

namespace amfuse {
namespace {

const std::string kB = std::string(kWordBoundary);

WordSequence W(const std::string &s) { return SplitWhitespace(s); }

ErrorCounts Counts(int64_t s, int64_t d, int64_t i, int64_t n) {
  ErrorCounts c;
  c.substitutions = s;
  c.deletions = d;
  c.insertions = i;
  c.ref_length = n;
  return c;
}

WordSequence RandomWords(std::mt19937_64 &rng, int max_len) {
  static const char *kWords[] = {"a", "b", "c", "d"};
  WordSequence w(rng() % (max_len + 1));
  for (auto &x : w) x = kWords[rng() % 4];
  return w;
}

TEST(WordErrors, Examples) {
  EXPECT_EQ(WordErrors(W("a b c"), W("a b c")), Counts(0, 0, 0, 3));
  EXPECT_EQ(WordErrors(W("a b c"), W("a x c")), Counts(1, 0, 0, 3));
  EXPECT_NEAR(WordErrors(W("a b c"), W("a x c")).Wer(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(WordErrors(W("a b"), {}), Counts(0, 2, 0, 2));
  EXPECT_EQ(WordErrors(W("a b"), {}).Wer(), 1.0);
  EXPECT_EQ(WordErrors(W("a"), W("a b c")), Counts(0, 0, 2, 1));
  EXPECT_THROW(WordErrors({}, W("a")), Error);
  EXPECT_EQ(AlignErrors({}, W("a")), Counts(0, 0, 1, 0));
  EXPECT_THROW(AlignErrors({}, W("a")).Wer(), Error);
}

TEST(WordErrors, PrefersSubstitutionInBacktrace) {
  // "a b" vs "b c": two substitutions or one deletion plus one insertion.
  EXPECT_EQ(WordErrors(W("a b"), W("b c")), Counts(2, 0, 0, 2));
}

TEST(WordErrors, MatchesEditDistanceOracle) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    WordSequence ref = RandomWords(rng, 8);
    if (ref.empty()) ref.push_back("a");
    const WordSequence hyp = RandomWords(rng, 8);
    const ErrorCounts c = WordErrors(ref, hyp);
    EXPECT_EQ(c.Errors(), oracle::EditDistance(ref, hyp));
    EXPECT_EQ(c.ref_length, static_cast<int64_t>(ref.size()));
    EXPECT_EQ(static_cast<int64_t>(ref.size()) - c.deletions +
                  c.insertions,
              static_cast<int64_t>(hyp.size()));
    if (!hyp.empty()) {
      const ErrorCounts r = WordErrors(hyp, ref);
      EXPECT_EQ(r.substitutions, c.substitutions);
      EXPECT_EQ(r.deletions, c.insertions);
      EXPECT_EQ(r.insertions, c.deletions);
    }
  }
}

TEST(OracleErrors, PicksFewestErrorsPreferringRank) {
  const Vocabulary vocab({"<blank>", kB + "a", kB + "b", kB + "c", kB + "d"},
                         Vocabulary::Kind::kCtc);
  NBestList nbest{"u", {{{4, 4, 3}, {}}, {{1, 4, 3}, {}}, {{4, 4, 4, 4}, {}}}};
  const WordSequence ref = W("a b c");
  const auto r = OracleErrors(nbest, ref, vocab);
  EXPECT_EQ(r.index, 1u);
  EXPECT_EQ(r.counts.Errors(), 1);

  nbest.hypotheses.push_back({{1, 2, 3}, {}});
  EXPECT_EQ(OracleErrors(nbest, ref, vocab).counts.Errors(), 0);

  const NBestList tied{"u", {{{1, 2, 4}, {}}, {{4, 2, 3}, {}}}};
  EXPECT_EQ(OracleErrors(tied, ref, vocab).index, 0u);

  const NBestList single{"u", {{{4, 4}, {}}}};
  EXPECT_EQ(OracleErrors(single, ref, vocab).counts, WordErrors(ref, W("d d")));
  EXPECT_THROW(OracleErrors({"u", {}}, ref, vocab), Error);
}

TEST(OracleErrors, NeverWorseThanTopOne) {
  std::mt19937_64 rng(62);
  const Vocabulary vocab({"<blank>", kB + "a", kB + "b", kB + "c", kB + "d"},
                         Vocabulary::Kind::kCtc);
  ErrorCounts top, best;
  for (int u = 0; u < 200; ++u) {
    WordSequence ref = RandomWords(rng, 6);
    if (ref.empty()) ref.push_back("b");
    NBestList nbest{"u", {}};
    const int n = 1 + rng() % 5;
    for (int h = 0; h < n; ++h) {
      TokenSequence toks(rng() % 7);
      for (auto &t : toks) t = 1 + rng() % 4;
      nbest.hypotheses.push_back({toks, {}});
    }
    const ErrorCounts t = WordErrors(ref, HypothesisWords(nbest.hypotheses[0], vocab));
    const ErrorCounts o = OracleErrors(nbest, ref, vocab).counts;
    EXPECT_LE(o.Errors(), t.Errors());
    top += t;
    best += o;
  }
  EXPECT_LE(best.Wer(), top.Wer());
}

TEST(Werr, TableValues) {
  EXPECT_NEAR(100 * Werr(3.63, 3.11), 14.33, 0.01);
  EXPECT_NEAR(100 * Werr(3.30, 2.85), 13.64, 0.01);
  EXPECT_NEAR(100 * Werr(4.82, 4.70), 2.49, 0.01);
  EXPECT_NEAR(100 * Werr(11.75, 11.26), 4.17, 0.01);
  EXPECT_NEAR(100 * Werr(3.95, 3.63), 8.10, 0.01);
  EXPECT_EQ(Werr(0.2, 0.2), 0.0);
  EXPECT_GT(Werr(0.2, 0.1), Werr(0.2, 0.15));
  EXPECT_THROW(Werr(0.0, 0.1), Error);
}

class BucketTest : public ::testing::Test {
 protected:
  BucketTest() : lm_(NGramModel::ReadArpa(testutil::DataPath("toy2gram.arpa"))) {}
  NGramModel lm_;
};

TEST_F(BucketTest, EqualSizes) {
  std::vector<BucketItem> corpus;
  for (int i = 0; i < 10; ++i) corpus.push_back({W("a"), W("a"), W("a")});
  const auto buckets = PplBuckets(corpus, lm_, 5);
  ASSERT_EQ(buckets.size(), 5u);
  for (const auto &b : buckets) EXPECT_EQ(b.size, 2u);
  EXPECT_THROW(PplBuckets(corpus, lm_, 11), Error);
  EXPECT_THROW(PplBuckets(corpus, lm_, 0), Error);
}

TEST_F(BucketTest, TiesKeepInputOrderAndExtraItemsGoFirst) {
  std::vector<BucketItem> corpus;
  for (int i = 0; i < 5; ++i) {
    // Item i carries i baseline errors.
    WordSequence hyp = W("a");
    for (int e = 0; e < i; ++e) hyp.push_back("b");
    corpus.push_back({W("a"), hyp, W("a")});
  }
  const auto buckets = PplBuckets(corpus, lm_, 2);
  ASSERT_EQ(buckets.size(), 2u);
  EXPECT_EQ(buckets[0].size, 3u);
  EXPECT_EQ(buckets[1].size, 2u);
  EXPECT_EQ(buckets[0].baseline.Errors(), 0 + 1 + 2);
  EXPECT_EQ(buckets[1].baseline.Errors(), 3 + 4);
  EXPECT_EQ(buckets[0].werr, 1.0);
}

TEST_F(BucketTest, SortsByReferencePerplexity) {
  // "c a" is far more likely than "b b" under the toy model.
  const std::vector<BucketItem> corpus = {
      {W("b b"), W("x x"), W("b x")},
      {W("c a"), W("c a"), W("c a")},
  };
  const auto buckets = PplBuckets(corpus, lm_, 2);
  EXPECT_LT(buckets[0].mean_ppl, buckets[1].mean_ppl);
  EXPECT_EQ(buckets[0].baseline.Errors(), 0);
  EXPECT_TRUE(std::isnan(buckets[0].werr));
  EXPECT_EQ(buckets[1].baseline.Errors(), 2);
  EXPECT_NEAR(buckets[1].werr, 0.5, 1e-12);
  EXPECT_NEAR(buckets[0].mean_ppl, lm_.Perplexity(W("c a")), 1e-12);

  std::ostringstream report;
  WriteBucketReport(report, buckets);
  EXPECT_NE(report.str().find("\tNA\n"), std::string::npos);
  EXPECT_NE(report.str().find("\t0.5000\n"), std::string::npos);
}

TEST_F(BucketTest, TokenizedReferences) {
  const Vocabulary pieces({"<blank>", kB + "a", kB + "b", kB + "c"},
                          Vocabulary::Kind::kCtc);
  const NGramModel piece_lm =
      TrainNGram({{kB + "a", kB + "b"}}, {kB + "a", kB + "b", kB + "c"}, 2);
  EXPECT_NEAR(ReferencePerplexity(W("a b"), piece_lm, &pieces),
              piece_lm.Perplexity(std::vector<std::string>{kB + "a", kB + "b"}),
              1e-12);
}

}  // namespace
}  // namespace amfuse
