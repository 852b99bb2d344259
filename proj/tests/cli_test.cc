// Copyright 2026 The agq Authors.
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
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "agq/relstore.h"
#include "fixtures.h"

#ifndef AGQ_BIN
#error "AGQ_BIN must name the agq executable"
#endif

namespace agq {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result sh(const std::string& command) {
  Result r;
  FILE* p = ::popen((command + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string agq(const std::string& args) {
  return quote(AGQ_BIN) + " " + args;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    static int counter = 0;
    root_ = fs::temp_directory_path() /
            ("agq_cli_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string dir(const std::string& name) const {
    return (root_ / name).string();
  }
  std::string store(const std::string& name, const RelationalStore& s) const {
    save(s, root_ / name);
    return dir(name);
  }

  fs::path root_;
};

TEST_F(Cli, ImportTimitMatchesGolden) {
  std::string out = dir("sa1");
  Result r = sh(agq("import --kind timit --wrd " +
                    quote(testing::data_dir() + "/sa1.wrd") + " --phn " +
                    quote(testing::data_dir() + "/sa1.phn") +
                    " --rate 16000 -o " + quote(out)));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "imported 18 nodes, 22 arcs into " + out + "\n");
  for (const char* f : {"arc.tsv", "time.tsv", "label.tsv", "meta.txt"}) {
    EXPECT_EQ(testing::read_text(out + "/" + f),
              testing::read_text(testing::golden_dir() + "/sa1_store/" + f))
        << f;
  }
  Result v = sh(agq("validate -d " + quote(out)));
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "OK\n");
}

TEST_F(Cli, ImportErrors) {
  Result missing = sh(agq("import --kind timit --wrd /nonexistent/a.wrd --phn " +
                          quote(testing::data_dir() + "/sa1.phn") + " -o " +
                          quote(dir("x"))));
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.out.find("/nonexistent/a.wrd"), std::string::npos);

  Result rate = sh(agq("import --kind turns --turns " +
                       quote(testing::data_dir() + "/callhome.txt") +
                       " --rate 0 -o " + quote(dir("y"))));
  EXPECT_EQ(rate.code, 2);
  EXPECT_NE(rate.out.find("resolution"), std::string::npos);
}

TEST_F(Cli, ImportTurns) {
  Result r = sh(agq("import --kind turns --turns " +
                    quote(testing::data_dir() + "/callhome.txt") +
                    " --rate 100 -o " + quote(dir("ch"))));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(sh(agq("validate -d " + quote(dir("ch")))).code, 0);
}

TEST_F(Cli, ValidateReportsCycle) {
  RelationalStore s({{ArcId(1), NodeId(1), NodeId(2), "W"},
                     {ArcId(2), NodeId(2), NodeId(3), "W"},
                     {ArcId(3), NodeId(3), NodeId(2), "W"},
                     {ArcId(4), NodeId(3), NodeId(4), "W"}},
                    {{NodeId(1), Time(0)}, {NodeId(4), Time(5)}},
                    {{ArcId(1), "a"}, {ArcId(2), "b"}, {ArcId(3), "c"},
                     {ArcId(4), "d"}},
                    {}, StoreMeta{});
  Result r = sh(agq("validate -d " + quote(store("cyc", s))));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("CYCLE\t2,3\t", 0), 0u) << r.out;
}

TEST_F(Cli, ValidateEmptyDirIsUsageError) {
  fs::create_directories(root_ / "empty");
  EXPECT_EQ(sh(agq("validate -d " + quote(dir("empty")))).code, 2);
  EXPECT_EQ(sh(agq("validate")).code, 2);
}

TEST_F(Cli, QueryDurationGivesFiveRows) {
  std::string d = store("timit", testing::timit_store());
  const char* q =
      "select ans(E,L) where TL <- timit ; "
      "[id: E, start: X, end: Y, label: L, type: word] <- TL ; "
      "time(Y) - time(X) < 8000";
  Result r = sh(agq("query -d " + quote(d) + " -e " + quote(q)));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out,
            "# ans(E,L)\n18\tshe\n19\thad\n20\tyour\n21\tdark\n22\tsuit\n");
  Result naive = sh(agq("query --no-opt -d " + quote(d) + " -e " + quote(q)));
  EXPECT_EQ(naive.out, r.out);
}

TEST_F(Cli, QueryFromFileAndEnvironment) {
  std::string d = store("timit", testing::timit_store());
  std::string file = dir("q1.agq");
  {
    std::ofstream out(file);
    out << "# query one\nselect ans(A, L)\nwhere X.[id: A, label: L].Y <- db/word\n"
           "      X.[]*.[:d].[]*.[:k].Y <- db/ph\n";
  }
  Result r = sh("AGQ_CORPUS=" + quote(d) + " " + agq("query -q " + quote(file)));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "# ans(A,L)\n21\tdark\n");
  Result json = sh(agq("query -d " + quote(d) + " -q " + quote(file) +
                       " --format json-lines"));
  EXPECT_EQ(json.out, "{\"A\":21,\"L\":\"dark\"}\n");
}

TEST_F(Cli, QueryErrors) {
  std::string d = store("timit", testing::timit_store());
  Result star = sh(agq("query -d " + quote(d) + " -e " +
                       quote("select r(X) where X.[type: T]*.Y <- db")));
  EXPECT_EQ(star.code, 3);
  EXPECT_NE(star.out.find("STAR_VAR"), std::string::npos);
  Result syntax = sh(agq("query -d " + quote(d) + " -e " + quote("select")));
  EXPECT_EQ(syntax.code, 3);
  Result source = sh(agq("query -d " + quote(d) + " -e " +
                         quote("select r(E) where [id: E] <- nowhere")));
  EXPECT_EQ(source.code, 3);
  Result both = sh(agq("query -d " + quote(d) + " -e x -q y"));
  EXPECT_EQ(both.code, 2);
  Result none = sh(agq("query -d " + quote(d)));
  EXPECT_EQ(none.code, 2);
  Result empty = sh(agq("query -d " + quote(d) + " -e " +
                        quote("select r(E) where [id: E, label: zzz] <- db")));
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "# r(E)\n");
}

TEST_F(Cli, IndexStatsOnPrecedenceGraph) {
  std::string d =
      store("prec", export_relations(testing::precedence_graph(), StoreMeta{}));
  Result r = sh(agq("index-stats --tc -d " + quote(d)));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("strict_residual=5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("# nodes=11 timed=6 residual=15"), std::string::npos)
      << r.out;
  EXPECT_EQ(r.out.rfind("1\t11\t6\t15", 0), 0u) << r.out;
}

TEST_F(Cli, ExplainNamesSentenceAnchor) {
  const char* q =
      "select ans(X,Y)\n"
      "where X.[type = parse, label = sentence].Y <- db\n"
      "      X.[type = word]*.[type = word, label = opera]\n"
      "       .[type = word]*.Y <- db";
  Result r = sh(agq("explain -e " + quote(q)));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out,
            testing::read_text(testing::golden_dir() + "/explain_example_a.txt"));
  EXPECT_NE(r.out.find("anchor: clause 1"), std::string::npos);
}

TEST_F(Cli, Repl) {
  std::string d = store("timit", testing::timit_store());
  Result quit = sh("printf '\\\\q\\n' | " + agq("repl -d " + quote(d)));
  EXPECT_EQ(quit.code, 0);
  EXPECT_EQ(quit.out, "");

  Result q = sh(
      "printf 'select r(E)\\nwhere [id: E, label: dark] <- db;\\n"
      "\\\\opt off\\nselect r(E) where [id: E, type: T]*.Y <- db;\\n"
      "\\\\stats\\n' | " +
      agq("repl -d " + quote(d)));
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(q.out.rfind("# r(E)\n21\nerror: STAR_VAR", 0), 0u) << q.out;
  EXPECT_NE(q.out.find("# nodes=21 timed=20"), std::string::npos) << q.out;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(sh(agq("")).code, 2);
  EXPECT_EQ(sh(agq("frobnicate")).code, 2);
  EXPECT_EQ(sh(agq("query --format xml -e x")).code, 2);
  EXPECT_EQ(sh(agq("--help")).code, 0);
}

}  // namespace
}  // namespace agq
