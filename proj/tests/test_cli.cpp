// Copyright 2026 The TAAF Authors
// SPDX-License-Identifier: Apache-2.0
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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "taaf/cli.hpp"
#include "taaf/io.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = taaf::cli::dispatch(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) {
  std::ifstream in(std::string(TAAF_SOURCE_DIR) + "/tests/golden/" + name, std::ios::binary);
  EXPECT_TRUE(in.good()) << name;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(CliGolden, EvalRelu) {
  const auto r = run({"eval", "relu", "--z", "1.5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.5\n");
  EXPECT_EQ(r.out, golden("eval_relu.txt"));
}

TEST(CliGolden, TableSigmoid) {
  const auto r = run({"table", "logistic_sigmoid", "--from", "-1", "--to", "1", "--steps", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("table_logistic_sigmoid.csv"));
  std::istringstream lines(r.out);
  std::string header, first, middle;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, middle);
  EXPECT_EQ(header, "z,value,derivative");
  EXPECT_EQ(middle, "0,0.5,0.25");
  EXPECT_EQ(count_lines(r.out), 4u);
}

TEST(CliGolden, VerifyAll) {
  const auto r = run({"verify", "--all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, golden("verify_all.csv"));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "name,binding,max_abs_diff,worst_z,pass");
  EXPECT_EQ(count_lines(r.out), 1 + 3 * taaf::list_records().size());
  EXPECT_EQ(run({"verify", "--all"}).out, r.out);
}

TEST(Cli, VerifyOneRecord) {
  const auto r = run({"verify", "--name", "disrelu", "--params", "a=1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "name,binding,max_abs_diff,worst_z,pass\ndisrelu,a=1,0,0,true\n");
  const auto d = run({"verify", "--name", "adaptive_slope_tanh"});
  EXPECT_EQ(d.code, 0);  // disputed records never fail the run
  EXPECT_NE(d.out.find(",false"), std::string::npos);
  EXPECT_NE(d.err.find("disputed"), std::string::npos);
}

TEST(Cli, VerifySeedChangesBindings) {
  EXPECT_NE(run({"verify", "--name", "sss", "--seed", "1"}).out,
            run({"verify", "--name", "sss", "--seed", "2"}).out);
  EXPECT_EQ(run({"verify", "--name", "sss", "--seed", "1"}).out,
            run({"verify", "--name", "sss", "--seed", "1"}).out);
}

TEST(Cli, EvalVariants) {
  EXPECT_EQ(run({"eval", "lrelu", "--z", "-2", "--params", "slope=0.5"}).out, "-1\n");
  EXPECT_EQ(run({"eval", "relu", "--z", "-4", "--taaf", "2,1,0,5"}).out, "5\n");
  EXPECT_EQ(run({"eval", "disrelu", "--z", "2", "--params", "a=1"}).out, "2\n");
  EXPECT_EQ(run({"eval", "silu", "--z", "1"}).out, "0.7310585786300049\n");
}

TEST(Cli, ListAndDescribe) {
  const auto all = run({"list"});
  EXPECT_EQ(all.code, 0);
  EXPECT_EQ(count_lines(all.out), taaf::list_records().size());
  const auto disputed = run({"list", "--disputed"});
  EXPECT_NE(disputed.out.find("pfts\n"), std::string::npos);
  EXPECT_EQ(disputed.out.find("sss\n"), std::string::npos);
  EXPECT_EQ(count_lines(run({"list", "--catalog"}).out), taaf::catalog_entries().size());

  const auto d = run({"describe", "relu"});
  EXPECT_EQ(d.code, 0);
  const auto j = taaf::io::Json::parse(d.out);
  EXPECT_EQ(j["id"], "relu");
  EXPECT_EQ(j["kinks"], "{0}");
  EXPECT_EQ(taaf::io::Json::parse(run({"describe", "sss"}).out)["inner"], "logistic_sigmoid");
  EXPECT_EQ(taaf::io::Json::parse(run({"describe", "--all"}).out).size(),
            taaf::catalog_entries().size());
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"eval", "relu"},
           {"eval", "relu", "--z", "abc"},
           {"eval", "no_such_fn", "--z", "1"},
           {"eval", "lrelu", "--z", "1", "--params", "slope"},
           {"eval", "relu", "--z", "1", "--taaf", "1,2"},
           {"table", "tanh", "--steps", "0"},
           {"table", "tanh", "--grid", "0:1"},
           {"verify"},
           {"verify", "--all", "--name", "sss"},
           {"verify", "--name", "nope"},
           {"verify", "--name", "pshelu", "--params", "a=1,b=0,c=1"},
           {"gradcheck"},
           {"fit", "--inner", "tanh"},
           {"bench", "--subjects", "relu", "--n", "10"},
       }) {
    const auto r = run(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    EXPECT_EQ(r.code, 2) << joined;
    EXPECT_TRUE(r.out.empty()) << joined;
    EXPECT_EQ(count_lines(r.err), 1u) << joined << "\n" << r.err;
  }
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Cli, Gradcheck) {
  const auto r = run({"gradcheck", "--subject", "tanh"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "subject,points_checked,points_skipped,failures,passed\ntanh,201,0,0,true\n");
  const auto j = taaf::io::Json::parse(run({"gradcheck", "--subject", "relu", "--json"}).out);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["reports"][0]["points_skipped"], 1);
  EXPECT_EQ(run({"gradcheck", "--subject", "sss", "--params", "a=2,b=0.5"}).code, 0);
  EXPECT_EQ(run({"gradcheck", "--subject", "relu", "--taaf", "1,2,0.5,0"}).code, 0);
}

TEST(Cli, GradcheckAll) {
  const auto r = run({"gradcheck", "--all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find(",false"), std::string::npos);
}

TEST(Cli, Fit) {
  const auto csv = std::filesystem::temp_directory_path() / "taaf_cli_loss.csv";
  const auto r = run({"fit", "--inner", "tanh", "--planted", "1.5,0.8,-0.3,0.25", "--n", "1024",
                      "--lr", "0.05", "--epochs", "20000", "--seed", "7", "--loss-csv",
                      csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = taaf::io::Json::parse(r.out);
  EXPECT_EQ(j["recovered"], true);
  EXPECT_LE(j["final_mse"].get<double>(), 1e-6);
  EXPECT_EQ(j["loss_curve"].size(), 20001u);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "epoch,mse");
  std::filesystem::remove(csv);
  EXPECT_EQ(run({"fit", "--inner", "tanh", "--planted", "1.5,0.8,-0.3,0.25", "--epochs", "50"}).out,
            run({"fit", "--inner", "tanh", "--planted", "1.5,0.8,-0.3,0.25", "--epochs", "50"}).out);
}

TEST(Cli, FitDivergenceExitsOne) {
  const auto r = run({"fit", "--inner", "exp_minus_one", "--planted", "3,2,0,0", "--lr", "50",
                      "--epochs", "200"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("diverged"), std::string::npos);
}

TEST(Cli, Bench) {
  const auto r = run({"bench", "--subjects", "relu,tanh", "--n", "100000", "--repeats", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "subject,n_evals,repeats,median_evals_per_sec,cv");
  EXPECT_EQ(count_lines(r.out), 3u);
  EXPECT_NE(r.err.find("checksum relu "), std::string::npos);
  const auto j = taaf::io::Json::parse(
      run({"bench", "--subjects", "relu", "--n", "100000", "--repeats", "3", "--json"}).out);
  EXPECT_EQ(j[0]["subject"], "relu");
}

TEST(Cli, RegistryOverride) {
  const auto path = std::filesystem::temp_directory_path() / "taaf_cli_registry.json";
  {
    taaf::io::Json arr = taaf::io::Json::array();
    arr.push_back(taaf::io::to_json(taaf::Registry::builtin().find("sss")));
    std::ofstream out(path);
    out << arr.dump(2);
  }
  ::setenv("TAAF_REGISTRY", path.c_str(), 1);
  const auto listed = run({"list"});
  const auto verified = run({"verify", "--all"});
  ::setenv("TAAF_REGISTRY", "/nonexistent/registry.json", 1);
  const auto missing = run({"list"});
  ::unsetenv("TAAF_REGISTRY");
  std::filesystem::remove(path);
  EXPECT_EQ(listed.out, "sss\n");
  EXPECT_EQ(verified.code, 0);
  EXPECT_EQ(count_lines(verified.out), 4u);
  EXPECT_EQ(missing.code, 2);
}

// The installed binary behaves like dispatch().
TEST(Cli, Binary) {
  const std::string cmd = std::string(TAAF_CLI_PATH) + " eval relu --z 1.5";
  FILE* p = ::popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  char buf[64] = {};
  const std::size_t n = std::fread(buf, 1, sizeof(buf) - 1, p);
  EXPECT_EQ(WEXITSTATUS(::pclose(p)), 0);
  EXPECT_EQ(std::string(buf, n), "1.5\n");
  EXPECT_EQ(WEXITSTATUS(std::system((std::string(TAAF_CLI_PATH) + " bogus 2>/dev/null").c_str())),
            2);
}

}  // namespace
