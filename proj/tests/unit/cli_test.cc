// Copyright 2026 The umebh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "umebh/cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include <json.hpp>

#include "umebh/hadamard.h"
#include "umebh/matrix_file.h"

namespace umebh {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("umebh_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string generate(const std::string& name, std::vector<std::string> args) {
    args.insert(args.begin(), "generate");
    args.push_back("--out");
    args.push_back(path(name));
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(name);
  }

  std::string write(const std::string& name, const std::string& text) {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateProp2MatchesLibrary) {
  const auto r = run({"generate", "prop2", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = parse(r.out);
  EXPECT_EQ(f.d, 5);
  EXPECT_TRUE(same_matrix(f.rows, prop2_matrix(1).matrix(), 0.0));
}

TEST_F(CliTest, GenerateUmeb5HasTwentyThreeMembers) {
  const auto r = run({"generate", "umeb", "--d", "5"});
  ASSERT_EQ(r.code, 0);
  const auto f = parse(r.out);
  EXPECT_EQ(f.kind, FileKind::kUnitarySet);
  EXPECT_EQ(f.members.size(), 23u);
}

TEST_F(CliTest, GenerateFourierIsComplete) {
  const auto r = run({"generate", "fourier", "--d", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r.out).rows.rows(), 4);
}

TEST_F(CliTest, UnknownFamilyListsCatalog) {
  const auto r = run({"generate", "nosuch"});
  EXPECT_EQ(r.code, kExitMalformed);
  EXPECT_NE(r.err.find("fourier"), std::string::npos);
  EXPECT_NE(r.err.find("umeb"), std::string::npos);
}

TEST_F(CliTest, MissingParameterIsUsageError) {
  EXPECT_EQ(run({"generate", "prop2"}).code, kExitMalformed);
  EXPECT_EQ(run({"generate", "umeb", "--d", "6"}).code, kExitMalformed);
}

TEST_F(CliTest, NoSubcommandIsUsageError) {
  EXPECT_EQ(run({}).code, kExitMalformed);
  EXPECT_EQ(run({"frobnicate"}).code, kExitMalformed);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST_F(CliTest, RoundTripEveryFamily) {
  const std::vector<std::vector<std::string>> catalog = {
      {"fourier", "--d", "6"},     {"prop2", "--n", "2"},
      {"example5"},                {"example7"},
      {"prop2-beta", "--n", "2"},  {"example5-nu"},
      {"s0", "--d", "4"},          {"weyl", "--d", "3"},
      {"umeb", "--d", "5"},        {"umeb", "--d", "7"},
  };
  for (const auto& args : catalog) {
    std::vector<std::string> full = {"generate"};
    full.insert(full.end(), args.begin(), args.end());
    const auto r = run(full);
    ASSERT_EQ(r.code, 0) << args[0];
    EXPECT_EQ(serialize(parse(r.out)), r.out) << args[0];
    const std::string file = write("f.json", r.out);
    const auto v = run({"verify", file});
    // The full Weyl basis has d^2 members, one too many for a UMEB.
    const int expected = args[0] == "weyl" ? kExitVerificationFailed : kExitPass;
    EXPECT_EQ(v.code, expected) << args[0] << "\n" << v.out;
  }
}

TEST_F(CliTest, VerifyUmeb7Passes) {
  const auto file = generate("u7.json", {"umeb", "--d", "7"});
  const auto r = run({"verify", file});
  ASSERT_EQ(r.code, 0);
  const auto rep = r.report();
  EXPECT_EQ(rep["members"], 45);
  for (const auto& c : rep["clauses"]) {
    if (c["name"] == "trace_gram") EXPECT_LT(c["value"].get<double>(), 1e-9);
  }
}

TEST_F(CliTest, VerifyPerturbedEntryNamesClause) {
  auto f = make_rows_file(FileKind::kPartialHadamard, fourier(5).matrix());
  f.rows(1, 2) *= 1.0 + 1e-3;
  const auto file = write("bad.json", serialize(f));
  const auto r = run({"verify", file});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  const auto rep = r.report();
  bool named = false;
  for (const auto& c : rep["clauses"]) {
    if (c["name"] == "unimodular_entries") {
      EXPECT_FALSE(c["pass"].get<bool>());
      EXPECT_NE(c["detail"].get<std::string>().find("(1, 2)"), std::string::npos);
      named = true;
    }
  }
  EXPECT_TRUE(named);
  EXPECT_FALSE(rep["pass"].get<bool>());
}

TEST_F(CliTest, VerifyMalformedReportsLocation) {
  const auto file = write(
      "m.json", R"({"schema_version":"1","kind":"partial_hadamard","d":2,
                    "rows":[[[1,0],[1,0]],[[1,0]]]})");
  const auto r = run({"verify", file});
  EXPECT_EQ(r.code, kExitMalformed);
  EXPECT_NE(r.err.find("$.rows[1]"), std::string::npos);
}

TEST_F(CliTest, VerifyExample5Unextendible) {
  const auto file = generate("e5.json", {"example5"});
  const auto r = run({"verify", file, "--unextendible", "--starts", "100"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rep = r.report();
  EXPECT_EQ(rep["verdict"], "UMEB-certified");
  EXPECT_EQ(rep["evidence_tier"], "algebraic");
}

TEST_F(CliTest, VerifyProp2N2CertifiedAfterExtensionStalls) {
  const auto file = generate("p2.json", {"prop2", "--n", "2"});
  const auto r = run({"verify", file, "--unextendible", "--starts", "300"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rep = r.report();
  EXPECT_EQ(rep["verdict"], "UMEB-certified");
  EXPECT_EQ(rep["evidence_tier"], "heuristic");
  EXPECT_GE(rep["rows_added"].get<int>(), 1);
}

TEST_F(CliTest, VerifyUmeb7UnextendibleFindsWitness) {
  const auto file = generate("u7.json", {"umeb", "--d", "7"});
  const auto r = run({"verify", file, "--unextendible", "--starts", "100"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_EQ(r.report()["verdict"], "extendible");
}

TEST_F(CliTest, VerifyGeneralSetUsesMatrixSearch) {
  const auto file = generate("s0.json", {"s0", "--d", "3"});
  const auto r = run({"verify", file, "--unextendible", "--starts", "20"});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  const auto rep = r.report();
  EXPECT_EQ(rep["structure"], "general");
  EXPECT_EQ(rep["verdict"], "extendible");
}

TEST_F(CliTest, CompleteFourierSix) {
  const auto file = generate("f6.json", {"fourier", "--d", "6", "--rows", "5"});
  const auto out = path("f6c.json");
  const auto r = run({"complete", file, "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto f = read_matrix_file(out);
  EXPECT_EQ(f.rows.rows(), 6);
  EXPECT_TRUE(check_partial(f.rows).accepted());
  EXPECT_EQ(run({"verify", out}).code, 0);
}

TEST_F(CliTest, CompleteScrambledTwelve) {
  const auto h = scramble(fourier(12), 99);
  const auto file = write(
      "s.json", serialize(make_rows_file(FileKind::kPartialHadamard,
                                         h.matrix().topRows(11))));
  const auto r = run({"complete", file});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(check_partial(parse(r.out).rows).accepted());
}

TEST_F(CliTest, CompleteWrongRowCountIsUsageError) {
  const auto file = generate("p1.json", {"prop2", "--n", "1"});
  const auto r = run({"complete", file});
  EXPECT_EQ(r.code, kExitMalformed);
  EXPECT_NE(r.err.find("search"), std::string::npos);
}

TEST_F(CliTest, SearchProp2N1) {
  const auto file = generate("p1.json", {"prop2", "--n", "1"});
  const auto out = path("ext.json");
  const auto r = run({"search", file, "--starts", "200", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = r.report();
  EXPECT_EQ(rep["final_rows"], 3);
  EXPECT_TRUE(rep["parity_certificate"]["valid"].get<bool>());
  for (const auto& c : rep["constraints"]) {
    EXPECT_LT(c["worst_violation"].get<double>(), 1e-5);
  }
  EXPECT_EQ(read_matrix_file(out).rows.rows(), 3);
}

TEST_F(CliTest, SearchFourierPrefixCompletes) {
  const auto file = generate("f5.json", {"fourier", "--d", "5", "--rows", "3"});
  const auto rep = run({"search", file, "--starts", "50"}).report();
  EXPECT_EQ(rep["final_rows"], 5);
  EXPECT_TRUE(rep["complete"].get<bool>());
}

TEST_F(CliTest, SearchExample7AttachesQuadraticCertificate) {
  const auto file = generate("e7.json", {"example7"});
  const auto rep = run({"search", file, "--starts", "50"}).report();
  EXPECT_TRUE(rep["quadratic_certificate"]["inconsistent"].get<bool>());
  EXPECT_TRUE(rep.contains("oracle_note"));
}

TEST_F(CliTest, OracleRequireOverBudgetExitsThree) {
  const auto file = generate("p2.json", {"prop2", "--n", "2"});
  EXPECT_EQ(run({"search", file, "--oracle", "require"}).code, kExitBudget);
  EXPECT_EQ(run({"verify", file, "--unextendible", "--oracle", "require"}).code,
            kExitBudget);
}

TEST_F(CliTest, SearchIsReproducible) {
  const auto file = generate("p1.json", {"prop2", "--n", "2"});
  auto a = run({"search", file, "--seed", "11", "--starts", "100"}).report();
  auto b = run({"search", file, "--seed", "11", "--starts", "100"}).report();
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["seed"], 11);
}

TEST_F(CliTest, ReportFlagWritesFile) {
  const auto rep_path = path("r.json");
  const auto r = run({"classify", "7", "--report", rep_path});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(rep_path);
  const json rep = json::parse(in);
  EXPECT_EQ(rep["status"], "Exists");
  EXPECT_TRUE(rep.contains("caveat"));
}

TEST_F(CliTest, ClassifyExamples) {
  auto rep = run({"classify", "22"}).report();
  EXPECT_EQ(rep["status"], "Unknown");
  EXPECT_EQ(rep["form"], "2p, p = 11");
  rep = run({"classify", "105"}).report();
  EXPECT_EQ(rep["status"], "Exists");
  EXPECT_EQ(rep["route"], "divisor-4n+1(5)");
  EXPECT_EQ(rep["lifts"].size(), 3u);
  EXPECT_TRUE(rep["deficiencies_distinct"].get<bool>());
  rep = run({"classify", "2"}).report();
  EXPECT_EQ(rep["status"], "NotExists");
  rep = run({"classify", "5"}).report();
  EXPECT_EQ(rep["witness_command"], "umebh generate umeb --d 5");
  EXPECT_EQ(run({"classify", "1"}).code, kExitMalformed);
  EXPECT_EQ(run({"classify", "abc"}).code, kExitMalformed);
}

TEST_F(CliTest, ToleranceFlagsAreEchoedAndValidated) {
  auto rep = run({"classify", "5", "--tol-orth", "1e-10"}).report();
  EXPECT_DOUBLE_EQ(rep["tolerances"]["eps_orth"].get<double>(), 1e-10);
  EXPECT_EQ(run({"classify", "5", "--tol-orth", "-1"}).code, kExitMalformed);
}

TEST_F(CliTest, LooseToleranceAcceptsPerturbedMatrix) {
  auto f = make_rows_file(FileKind::kPartialHadamard, fourier(3).matrix());
  f.rows(0, 0) *= 1.0 + 1e-6;
  const auto file = write("p.json", serialize(f));
  EXPECT_EQ(run({"verify", file}).code, kExitVerificationFailed);
  EXPECT_EQ(run({"verify", file, "--tol-unimodular", "1e-5", "--tol-orth",
                 "1e-5", "--tol-unitary", "1e-5"})
                .code,
            0);
}

}  // namespace
}  // namespace umebh
