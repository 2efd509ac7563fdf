// Copyright 2026 The D4M Schema Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the d4m binary end to end through a scratch directory.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "testing/corpus.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = 0;
  std::string out;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("d4m_cli_test_" + std::to_string(std::random_device()()));
    fs::create_directories(dir_);
    Write("tweets.tsv", Join(d4m::testing::MiniCorpusLines()));
    Write("tweets.cfg",
          "rowkey = id\nexplode = stat,time,user\ntext = text\nflip = true\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  static std::string Join(const std::vector<std::string>& lines) {
    std::string s;
    for (const std::string& l : lines) s += l + "\n";
    return s;
  }

  void Write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name, std::ios::binary) << content;
  }

  RunResult Run(const std::string& args) {
    std::string cmd = std::string(D4M_CLI_PATH) + " " + args + " 2>" +
                      (dir_ / "stderr.txt").string();
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
    r.status = pclose(p);
    return r;
  }

  std::string Store() const { return (dir_ / "store").string(); }

  void InitAndIngest() {
    ASSERT_EQ(
        Run("init --base T --dir " + Store() + " --flip --presplits 9").status,
        0);
    ASSERT_EQ(Run("ingest --dir " + Store() + " --base T --input " +
                  (dir_ / "tweets.tsv").string() + " --format tsv --spec " +
                  (dir_ / "tweets.cfg").string())
                  .status,
              0);
  }

  fs::path dir_;
};

TEST_F(CliTest, RowQueryPrintsTriples) {
  InitAndIngest();
  RunResult r =
      Run("query row --dir " + Store() + " --base T --key 31963172416000001");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "31963172416000001\tstat|200\t1\n"
            "31963172416000001\ttime|2011-01-31 06:33:08\t1\n"
            "31963172416000001\tuser|getuki\t1\n"
            "31963172416000001\tword|バスなう\t1\n");
}

TEST_F(CliTest, AndDegreeAndTextQueries) {
  InitAndIngest();
  EXPECT_EQ(Run("query and --dir " + Store() +
                " --base T --key 'word|Você' --key 'word|pra'")
                .out,
            "08805831972220092\tword|Você\t1\n"
            "08805831972220092\tword|pra\t1\n");
  EXPECT_EQ(Run("query degree --dir " + Store() +
                " --base T --key 'stat|200' 'word|none'")
                .out,
            "stat|200\tDegree\t2\nword|none\tDegree\t0\n");
  EXPECT_EQ(
      Run("query text --dir " + Store() + " --base T --key 75683042703220092")
          .out,
      "75683042703220092\ttext\tWait :)\n");
  EXPECT_EQ(
      Run("query col --dir " + Store() + " --base T --key 'user|getuki'").out,
      "31963172416000001\tuser|getuki\t1\n");
}

TEST_F(CliTest, JsonLinesIngestAndStats) {
  ASSERT_EQ(Run("init --base J --dir " + Store()).status, 0);
  Write("t.jsonl",
        "{\"id\":\"1\",\"user\":\"a\",\"text\":\"x y\"}\n"
        "not json\n"
        "{\"id\":\"2\",\"user\":\"a\",\"text\":\"y\"}\n");
  Write("j.cfg", "rowkey = id\nexplode = user\ntext = text\n");
  RunResult ingest = Run("ingest --dir " + Store() + " --base J --input " +
                         (dir_ / "t.jsonl").string() +
                         " --format jsonl --spec " + (dir_ / "j.cfg").string());
  EXPECT_EQ(ingest.status, 0);
  EXPECT_NE(ingest.out.find("rejected 1"), std::string::npos) << ingest.out;
  RunResult stats = Run("stats --dir " + Store() + " --base J");
  EXPECT_EQ(stats.status, 0);
  EXPECT_NE(stats.out.find("Jedge nnz 5 tablets 1"), std::string::npos)
      << stats.out;
  EXPECT_NE(stats.out.find("JedgeDeg nnz 3"), std::string::npos);
}

TEST_F(CliTest, InitTwiceFails) {
  ASSERT_EQ(Run("init --base T --dir " + Store()).status, 0);
  EXPECT_NE(Run("init --base T --dir " + Store()).status, 0);
}

TEST_F(CliTest, BenchWritesCsv) {
  std::string csv = (dir_ / "r.csv").string();
  RunResult r =
      Run("bench --scale 6 --edgefactor 4 --seed 3 --ingestors 2 --batch 50 "
          "--presplits 3 --keymode flipped --report " +
          csv);
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("entries 512"), std::string::npos) << r.out;
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "elapsed_s,cumulative_entries,inst_rate_eps");
}

TEST_F(CliTest, MissingRequiredFlagFails) {
  EXPECT_NE(Run("query row --dir " + Store() + " --base T").status, 0);
}

}  // namespace
