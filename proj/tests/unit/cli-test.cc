// unit/cli-test.cc

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

#include <filesystem>
#include <string>
#include <vector>

#include "amfuse/cli/cli-common.h"
#include "amfuse/core/hypothesis.h"
#include "gtest/gtest.h"
#include "test-util.h"

namespace amfuse {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "amfuse");
  ::testing::internal::CaptureStdout();
  ::testing::internal::CaptureStderr();
  RunResult r;
  r.code = Run(args);
  r.out = ::testing::internal::GetCapturedStdout();
  r.err = ::testing::internal::GetCapturedStderr();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new std::string((fs::path(::testing::TempDir()) / "amfuse-cli-corpus").string());
    fs::remove_all(*dir_);
    const RunResult r = RunCli({"synth", "--out-dir", *dir_, "--train", "100", "--dev",
                                "8", "--test", "8", "--lm-text", "50", "--seed", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() {
    delete dir_;
    dir_ = nullptr;
  }
  static std::string P(const std::string &name) { return *dir_ + "/" + name; }

  static std::string *dir_;
};

std::string *CliTest::dir_ = nullptr;

TEST_F(CliTest, SynthWritesCorpus) {
  for (const char *f : {"tokens.txt", "phones.txt", "lexicon.tsv", "train.txt", "dev.txt",
                        "test.txt", "lm.arpa", "ilm.arpa", "word_lm.arpa",
                        "test_e2e.list", "test_phone.list"}) {
    EXPECT_TRUE(fs::exists(P(f))) << f;
  }
  const auto list = ReadList(P("test_e2e.list"));
  ASSERT_EQ(list.size(), 8u);
  EXPECT_TRUE(fs::exists(list[0].path));
}

TEST_F(CliTest, DecodeSingleFileWritesRankedRows) {
  const auto list = ReadList(P("test_e2e.list"));
  const std::string out = testutil::ScratchDir() + "/u.nbest";
  const RunResult r = RunCli({"decode", "--posteriors", list[0].path, "--vocab",
                              P("tokens.txt"), "--beam", "8", "--nbest", "5", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto vocab = Vocabulary::Read(P("tokens.txt"), Vocabulary::Kind::kCtc);
  const auto lists = ReadNBestFile(out, vocab);
  ASSERT_EQ(lists.size(), 1u);
  EXPECT_EQ(lists[0].hypotheses.size(), 5u);
  EXPECT_EQ(lists[0].utt_id, fs::path(list[0].path).stem().string());
  EXPECT_NE(r.err.find("# amfuse decode"), std::string::npos);
}

TEST_F(CliTest, ScoreIdenticalFiles) {
  const RunResult r = RunCli({"score", "--ref", P("test.txt"), "--hyp", P("test.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("WER 0.0000", 0), 0u) << r.out;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"score", "--ref", P("test.txt"), "--bogus"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"score", "--hyp", P("test.txt")}).code, kExitUsage);
  EXPECT_EQ(RunCli({"score", "--ref", P("missing.txt"), "--hyp", P("test.txt")}).code,
            kExitData);
  EXPECT_EQ(RunCli({"synth", "--out-dir", testutil::ScratchDir(), "--alpha", "0.01"}).code,
            kExitUsage);
  // Malformed posteriors are a data error.
  const std::string bad = testutil::ScratchDir() + "/bad.fpm";
  testutil::WriteFile(bad, "NOPE");
  EXPECT_EQ(RunCli({"decode", "--posteriors", bad, "--vocab", P("tokens.txt"), "--out",
                    testutil::ScratchDir() + "/x.nbest"})
                .code,
            kExitData);
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  const std::string dir = testutil::ScratchDir();
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const std::string out = dir + "/j" + std::to_string(i) + ".nbest";
    const RunResult r = RunCli({"decode", "--list", P("test_e2e.list"), "--vocab",
                                P("tokens.txt"), "--lm", P("lm.arpa"), "--lambda-lm", "0.3",
                                "--jobs", i == 0 ? "1" : "4", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    outputs[i] = testutil::ReadFile(out);
  }
  EXPECT_FALSE(outputs[0].empty());
  EXPECT_EQ(outputs[0], outputs[1]);
}

TEST_F(CliTest, ZeroWeightRescoreKeepsDecodeOrder) {
  const std::string dir = testutil::ScratchDir();
  ASSERT_EQ(RunCli({"decode", "--list", P("dev_e2e.list"), "--vocab", P("tokens.txt"),
                    "--out", dir + "/dev.nbest"})
                .code,
            0);
  ASSERT_EQ(RunCli({"rescore", "--nbest", dir + "/dev.nbest", "--phone-list",
                    P("dev_phone.list"), "--lexicon", P("lexicon.tsv"), "--phones",
                    P("phones.txt"), "--vocab", P("tokens.txt"), "--out",
                    dir + "/dev.am.nbest"})
                .code,
            0);
  const auto vocab = Vocabulary::Read(P("tokens.txt"), Vocabulary::Kind::kCtc);
  const auto before = ReadNBestFile(dir + "/dev.nbest", vocab);
  const auto after = ReadNBestFile(dir + "/dev.am.nbest", vocab);
  ASSERT_EQ(before.size(), after.size());
  for (size_t u = 0; u < before.size(); ++u) {
    ASSERT_EQ(before[u].hypotheses.size(), after[u].hypotheses.size());
    for (size_t k = 0; k < before[u].hypotheses.size(); ++k) {
      EXPECT_EQ(before[u].hypotheses[k].tokens, after[u].hypotheses[k].tokens);
      EXPECT_TRUE(after[u].hypotheses[k].scores.am.has_value());
    }
  }
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  const std::string dir = testutil::ScratchDir();
  ASSERT_EQ(RunCli({"decode", "--list", P("dev_e2e.list"), "--vocab", P("tokens.txt"),
                    "--out", dir + "/dev.nbest"})
                .code,
            0);
  testutil::WriteFile(dir + "/a.conf", "# weights\nlambda_am = 0.7\nnbest = \"" + dir +
                                           "/dev.nbest\"\n");
  const std::vector<std::string> common = {
      "--phone-list", P("dev_phone.list"), "--lexicon", P("lexicon.tsv"), "--phones",
      P("phones.txt"), "--vocab", P("tokens.txt")};
  auto rescore = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"rescore"};
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), common.begin(), common.end());
    return RunCli(args);
  };
  RunResult r = rescore({"--config", dir + "/a.conf", "--out", dir + "/c.nbest"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("lambda-am=0.7"), std::string::npos) << r.err;
  ASSERT_EQ(rescore({"--nbest", dir + "/dev.nbest", "--lambda-am", "0.7", "--out",
                     dir + "/f.nbest"})
                .code,
            0);
  EXPECT_EQ(testutil::ReadFile(dir + "/c.nbest"), testutil::ReadFile(dir + "/f.nbest"));

  // The command line wins over the file.
  r = rescore({"--config", dir + "/a.conf", "--lambda-am", "0", "--out", dir + "/z.nbest"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("lambda-am=0"), std::string::npos) << r.err;
  EXPECT_EQ(r.err.find("lambda-am=0.7"), std::string::npos) << r.err;

  testutil::WriteFile(dir + "/bad.conf", "no_such_key = 1\n");
  EXPECT_EQ(rescore({"--config", dir + "/bad.conf", "--nbest", dir + "/dev.nbest"}).code,
            kExitUsage);
}

TEST_F(CliTest, SubcommandsAreIdempotent) {
  const std::string dir = testutil::ScratchDir();
  for (const char *name : {"a", "b"}) {
    const std::string d = dir + "/" + name;
    fs::create_directories(d);
    ASSERT_EQ(RunCli({"decode", "--list", P("test_e2e.list"), "--vocab", P("tokens.txt"),
                      "--out", d + "/t.nbest", "--hyp", d + "/t.txt"})
                  .code,
              0);
    ASSERT_EQ(RunCli({"tune", "--nbest", d + "/t.nbest", "--ref", P("test.txt"),
                      "--vocab", P("tokens.txt"), "--axes", "lm,ilm", "--report",
                      d + "/tune.tsv"})
                  .code,
              0);
    ASSERT_EQ(RunCli({"buckets", "--ref", P("test.txt"), "--baseline", d + "/t.txt",
                      "--fused", d + "/t.txt", "--lm", P("word_lm.arpa"), "-k", "2",
                      "--out", d + "/b.tsv"})
                  .code,
              0);
  }
  for (const char *f : {"t.nbest", "t.txt", "tune.tsv", "b.tsv"}) {
    EXPECT_EQ(testutil::ReadFile(dir + "/a/" + f), testutil::ReadFile(dir + "/b/" + f))
        << f;
  }
}

TEST(CliDemo, AmFusionDoesNotHurtCommittedDemo) {
  const std::string demo = std::string(AMFUSE_SOURCE_DIR) + "/data/demo";
  const std::string dir = testutil::ScratchDir();
  ASSERT_EQ(RunCli({"decode", "--list", demo + "/test_e2e.list", "--vocab",
                    demo + "/tokens.txt", "--out", dir + "/t.nbest", "--hyp",
                    dir + "/base.txt"})
                .code,
            0);
  ASSERT_EQ(RunCli({"rescore", "--nbest", dir + "/t.nbest", "--phone-list",
                    demo + "/test_phone.list", "--lexicon", demo + "/lexicon.tsv",
                    "--phones", demo + "/phones.txt", "--vocab", demo + "/tokens.txt",
                    "--lambda-am", "0.5", "--out", dir + "/f.nbest", "--hyp",
                    dir + "/fused.txt"})
                .code,
            0);
  auto wer = [&](const std::string &hyp) {
    const RunResult r = RunCli({"score", "--ref", demo + "/test.txt", "--hyp", hyp});
    EXPECT_EQ(r.code, 0) << r.err;
    return std::stod(r.out.substr(4));
  };
  const double base = wer(dir + "/base.txt"), fused = wer(dir + "/fused.txt");
  EXPECT_GT(base, 0.0);
  EXPECT_LE(fused, base);
}

}  // namespace
}  // namespace amfuse
