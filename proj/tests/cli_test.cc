// Copyright 2026 The ecodrive Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "commands.h"

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ecodrive/csv.h"

namespace ecodrive::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = ECODRIVE_DATA_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ecodrive");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ecodrive_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }
  std::string Read(const std::string& path) const {
    auto text = ReadFile(path);
    return text.ok() ? *text : "<missing " + path + ">";
  }

  fs::path dir_;
};

TEST_F(CliTest, MissingRouteNamesThePath) {
  const std::string trace = Path("t.csv");
  ASSERT_TRUE(WriteFile(trace, "t,x,v\n0,0,0\n1,1,1\n").ok());
  const CliRun r = Invoke({"score", "--trace", trace, "--route",
                        "/nonexistent/nowhere.route", "--out", Path("o")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("/nonexistent/nowhere.route"), std::string::npos)
      << r.err;
}

TEST_F(CliTest, MalformedTraceReportsTheRow) {
  const std::string trace = Path("bad.csv");
  ASSERT_TRUE(WriteFile(trace, "t,x,v\n0,0,0\n1,1,oops\n").ok());
  const CliRun r = Invoke({"score", "--trace", trace, "--route",
                        kData + "/rueil_bougival.route", "--out", Path("o")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("bad.csv"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownSubcommandIsAnInputError) {
  EXPECT_EQ(Invoke({"fly"}).code, kExitInputError);
  EXPECT_EQ(Invoke({}).code, kExitInputError);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, SimulateIsReproducible) {
  const std::string scenario = kData + "/scenarios/trip_03.scn";
  const CliRun a = Invoke({"simulate", "--scenario", scenario, "--seed", "42",
                        "--out", Path("a")});
  const CliRun b = Invoke({"simulate", "--scenario", scenario, "--seed", "42",
                        "--out", Path("b")});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(a.out, b.out);
  for (const char* file : {"ed_trace.csv", "hd_trace.csv", "advisory.csv",
                           "events.csv", "summary.txt"}) {
    const std::string first = Read(Path("a/") + file);
    EXPECT_EQ(first, Read(Path("b/") + file)) << file;
    EXPECT_GT(first.size(), 20u) << file;
  }
}

TEST_F(CliTest, SimulateManyScenariosUsesSubdirectories) {
  const CliRun r = Invoke({"simulate", "--scenario",
                        kData + "/scenarios/trip_01.scn", "--scenario",
                        kData + "/scenarios/trip_02.scn", "--out", Path("o")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(Path("o/trip_01/ed_trace.csv")));
  EXPECT_TRUE(fs::exists(Path("o/trip_02/hd_trace.csv")));
}

TEST_F(CliTest, ReferenceTraceScoresZero) {
  const std::string route = kData + "/rueil_bougival.route";
  const CliRun sim = Invoke({"simulate", "--scenario",
                          kData + "/scenarios/trip_05.scn", "--out",
                          Path("sim")});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  const CliRun first = Invoke({"score", "--trace", Path("sim/hd_trace.csv"),
                            "--route", route, "--out", Path("s1")});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  const std::string reference = Path("s1/sim_HD_reference.csv");
  ASSERT_TRUE(fs::exists(reference)) << first.out;
  const CliRun second = Invoke({"score", "--trace", reference, "--route", route,
                             "--out", Path("s2")});
  ASSERT_EQ(second.code, kExitOk) << second.err;
  EXPECT_NE(second.out.find("EDS 0.000000"), std::string::npos)
      << second.out;
  EXPECT_NE(Read(Path("s2/eds.csv")).find(",0.000000\n"), std::string::npos);
}

TEST_F(CliTest, CompareWritesBothTables) {
  const CliRun sim = Invoke({"simulate", "--scenario",
                          kData + "/scenarios/trip_02.scn", "--out",
                          Path("trip_02")});
  ASSERT_EQ(sim.code, kExitOk) << sim.err;
  const CliRun r =
      Invoke({"compare", "--route", kData + "/rueil_bougival.route", "--trace",
           Path("trip_02/ed_trace.csv") + "," + Path("trip_02/hd_trace.csv"),
           "--out", Path("cmp")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string comparison = Read(Path("cmp/comparison.csv"));
  EXPECT_EQ(comparison.rfind("trip,energy_gain_pct,delta_avg_speed_pct\n"
                             "trip_02,",
                             0),
            0u)
      << comparison;
  EXPECT_NE(Read(Path("cmp/eds.csv")).find("trip_02_HD,"), std::string::npos);
}

TEST_F(CliTest, CompareRejectsUnpairedTraces) {
  const CliRun r = Invoke({"compare", "--route", kData + "/rueil_bougival.route",
                        "--trace", Path("only.csv"), "--out", Path("o")});
  EXPECT_EQ(r.code, kExitInputError);
}

TEST_F(CliTest, OracleCheckIsReproducible) {
  const CliRun a = Invoke({"oracle-check", "--instances", "5", "--seed", "7"});
  const CliRun b = Invoke({"oracle-check", "--instances", "5", "--seed", "7"});
  ASSERT_EQ(a.code, kExitOk) << a.out << a.err;
  // Timings differ between runs; everything before them must not.
  auto strip = [](const std::string& s) {
    std::string out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
      out += line.substr(0, line.rfind(" (")) + "\n";
    }
    return out;
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 5);
}

TEST_F(CliTest, OracleCheckRejectsBadArguments) {
  EXPECT_EQ(Invoke({"oracle-check", "--instances", "0"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"oracle-check", "--slack", "-1"}).code, kExitInputError);
  EXPECT_EQ(Invoke({"oracle-check", "--instances", "many"}).code,
            kExitInputError);
}

}  // namespace
}  // namespace ecodrive::cli
