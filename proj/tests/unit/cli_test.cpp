// Copyright 2026 The mtlcheck Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mtlcheck/trace.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  std::string cmd = std::string(MTLCHECK_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mtlcheck-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
    std::ofstream(path("example1.trace")) << "1 p\n2 p\n4\n6 p\n8 p\n9\n10\n";
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string trace() const { return path("example1.trace"); }

  std::filesystem::path dir_;
};

TEST_F(Cli, CheckVerdictAndExitCodes) {
  Result r = cli("check " + trace() + " 'F[3,7] p'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VERDICT true\n");
  r = cli("check " + trace() + " '!p'");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "VERDICT false\n");
  EXPECT_EQ(cli("check " + trace() + " 'F[3 p'").code, 2);
  EXPECT_EQ(cli("check " + path("missing") + " p").code, 2);
  EXPECT_EQ(cli("check " + trace() + " p --semantics dense").code, 2);
  EXPECT_EQ(cli("check " + trace() + " 'F[1,inf) p' --k 3").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST_F(Cli, EnginesAgree) {
  for (const char* extra : {"", "--k 4", "--k 2 --workers 4 --block-bytes 5",
                            "--engine oracle", "--engine oracle --k 4",
                            "--engine oracle --semantics lazy --k 4"}) {
    Result r = cli("check " + trace() + " 'F[3,7] p' " + extra);
    EXPECT_EQ(r.code, 0) << extra;
    EXPECT_EQ(r.out, "VERDICT true\n") << extra;
  }
  // Anchored at time zero, windows are measured from 0 rather than from the first position.
  EXPECT_EQ(cli("check " + trace() + " 'F[5,6] p' --engine oracle --semantics lazy --anchor zero "
                "--k off")
                .out,
            "VERDICT true\n");
  EXPECT_EQ(cli("check " + trace() + " 'F[4,4] p' --engine oracle --semantics lazy --anchor zero "
                "--k off")
                .out,
            "VERDICT false\n");
}

TEST_F(Cli, StatsAndTable) {
  Result r = cli("check " + trace() + " 'F[3,7] p' --k 4 --stats " + path("s.json") + " --table " +
                 path("t.tsv"));
  ASSERT_EQ(r.code, 0);
  std::ifstream js(path("s.json"));
  auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["iterations"], 4);
  EXPECT_EQ(j["elements"], 7);
  EXPECT_TRUE(j["verdict"].get<bool>());
  EXPECT_FALSE(j["reducers"].empty());
  std::ifstream ts(path("t.tsv"));
  std::string header;
  std::getline(ts, header);
  EXPECT_EQ(header.rfind("subformula\t1\t2\t4\t5", 0), 0u) << header;
}

TEST_F(Cli, TranslateAndDecompose) {
  EXPECT_EQ(cli("translate 'F[3,7] p'").out, "F[3,7] (@act & p)\n");
  EXPECT_EQ(cli("decompose 'F[3,7] p' --k 4").out, "F[3,4] p | F=4 (F[0,3] p)\n");
  EXPECT_EQ(cli("decompose 'F[3,7] p' --k 10").out, "F[3,7] p\n");
  EXPECT_EQ(cli("decompose 'F[5,7] p' --k 4").out, "F=4 (F[1,3] p)\n");
  EXPECT_EQ(cli("decompose 'F[3,7] p' --k 0").code, 2);
}

TEST_F(Cli, Generate) {
  Result r = cli("generate --n 5 --m 1 --force-p");
  EXPECT_EQ(r.out, "1 p\n2 p\n3 p\n4 p\n5 p\n");
  ASSERT_EQ(cli("generate --n 300 --m 20 --seed 9 --suppress-q --out " + path("g.trace")).code, 0);
  mtlcheck::TimedWord w = mtlcheck::load_trace(path("g.trace"));
  EXPECT_EQ(w.size(), 300u);
  for (const auto& e : w.elements()) EXPECT_FALSE(e.has("q"));
  EXPECT_EQ(cli("generate --n 0").code, 2);
}

TEST_F(Cli, BenchCsv) {
  Result r = cli("bench --formula-template G --n 2000 --N-list 100,300 --K-list none,50 --out " +
                 path("b.csv"));
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path("b.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "formula,N,K,trace_n,wall_ms,peak_win_records,peak_win_bytes_est");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].rfind("\"G[0,100] q\",100,none,2000,", 0), 0u) << rows[0];
  EXPECT_NE(rows[0].find(",101,2424"), std::string::npos) << rows[0];
  EXPECT_NE(rows[3].find(",51,1224"), std::string::npos) << rows[3];
}

}  // namespace
