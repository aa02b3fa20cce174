// Copyright 2026 The SPA-P Toolkit Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "spap/harness.hpp"

using namespace spap;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream iss(line);
  while (std::getline(iss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.push_back("");
  return out;
}

int run_cli(const std::vector<std::string>& args, std::string* stdout_text = nullptr,
            std::string* stderr_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli(args, out, err);
  if (stdout_text) *stdout_text = out.str();
  if (stderr_text) *stderr_text = err.str();
  return code;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content = {}) {
    path = std::string("spap_test_") + name;
    if (!content.empty()) {
      std::ofstream f(path);
      f << content;
    }
  }
  ~TempFile() { std::remove(path.c_str()); }
  std::string read() const {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
};

}  // namespace

TEST_CASE("CSV schema is stable and rows parse back") {
  const ExperimentReport report = run_experiment_1({10}, 3, 5, SolveBudget{}, 11);
  const std::string csv = report.to_csv();
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "experiment,n1,n2,n3,pref_len,seed,mode,algo,size,opt,ratio,time_ms,nodes");
  int rows = 0;
  while (std::getline(lines, line)) {
    const std::vector<std::string> fields = split(line, ',');
    REQUIRE(fields.size() == 13);
    CHECK(std::stoi(fields[0]) == 1);
    CHECK(std::stoi(fields[1]) == 10);
    CHECK(std::stoi(fields[8]) >= 0);
    if (!fields[10].empty()) {
      const double ratio = std::stod(fields[10]);
      CHECK(ratio <= 1.0);
      CHECK(ratio > 0.0);
    }
    ++rows;
  }
  CHECK(rows == 3 * 5);  // trials x algorithms
}

TEST_CASE("empty parameter lists give empty reports") {
  CHECK(run_experiment_0({}, 5, SolveBudget{}, 0).rows.empty());
  CHECK(run_experiment_1({10}, 0, 5, SolveBudget{}, 0).rows.empty());
  CHECK(run_experiment_3({}, {PopularityMode::Random}, 5, SolveBudget{}, 0).rows.empty());
  const auto inst = std::make_pair(std::string("w"), testing::worked_instance());
  CHECK(run_experiment_3({inst}, {}, 5, SolveBudget{}, 0).rows.empty());
}

TEST_CASE("experiment 0 solves both modes to the same size") {
  const ExperimentReport report = run_experiment_0({10}, 10, SolveBudget{}, 3);
  REQUIRE(report.rows.size() == 20);
  std::map<std::uint64_t, std::map<std::string, int>> by_seed;
  for (const ReportRow& row : report.rows) {
    CHECK(row.algo == "A");
    CHECK(!row.budget_limited);
    by_seed[row.seed][row.mode] = row.size;
  }
  for (const auto& [seed, modes] : by_seed) {
    REQUIRE(modes.size() == 2);
    CHECK(modes.at("with-coalition") == modes.at("no-coalition"));
  }
}

TEST_CASE("experiment 1 rows respect the dominance and bound invariants") {
  const ExperimentReport report = run_experiment_1({10}, 20, 20, SolveBudget{}, 17);
  std::map<std::uint64_t, std::map<std::string, int>> by_seed;
  for (const ReportRow& row : report.rows) {
    REQUIRE(row.opt.has_value());
    by_seed[row.seed][row.algo] = row.size;
  }
  for (const auto& [seed, algos] : by_seed) {
    REQUIRE(algos.size() == 5);
    const int a = algos.at("A");
    CHECK(a >= algos.at("B"));
    CHECK(algos.at("B") >= algos.at("C"));
    CHECK(a >= algos.at("D"));
    CHECK(algos.at("D") >= algos.at("E"));
    CHECK(3 * algos.at("C") >= 2 * a);
    CHECK(2 * algos.at("E") >= a);
  }
}

TEST_CASE("experiment 2 rejects oversized list lengths") {
  CHECK_THROWS_AS(run_experiment_2(10, {9}, 1, 5, SolveBudget{}, 0), std::invalid_argument);
}

TEST_CASE("experiment 2 produces one block per list length") {
  const ExperimentReport report = run_experiment_2(10, {2, 4}, 4, 5, SolveBudget{}, 23);
  int len2 = 0, len4 = 0;
  for (const ReportRow& row : report.rows) {
    if (row.pref_len == "2") ++len2;
    if (row.pref_len == "4") ++len4;
  }
  CHECK(len2 == 4 * 5);
  CHECK(len4 == 4 * 5);
}

TEST_CASE("experiment 3 covers every mode and algorithm") {
  const std::vector<std::pair<std::string, Instance>> instances = {
      {"worked", testing::worked_instance()}};
  const std::vector<PopularityMode> modes = {PopularityMode::Random, PopularityMode::Ascending,
                                             PopularityMode::Descending};
  const ExperimentReport report = run_experiment_3(instances, modes, 10, SolveBudget{}, 5);
  CHECK(report.rows.size() == 3 * 5);
  const std::string grid = format_mode_grid(report);
  CHECK(grid.find("random") != std::string::npos);
  CHECK(grid.find("ascending") != std::string::npos);
  CHECK(grid.find("descending") != std::string::npos);
  CHECK(grid.find("3 3 2 1-3") != std::string::npos);
}

TEST_CASE("table-2 stand-ins have the published shape") {
  const std::vector<Table2Shape> shapes = table2_shapes();
  REQUIRE(shapes.size() == 4);
  const Instance standin = table2_standin(shapes[0], 1);
  CHECK(standin.num_students() == 55);
  CHECK(standin.num_projects() == 149);
  CHECK(standin.num_lecturers() == 38);
  for (const Project& p : standin.projects()) CHECK(p.capacity == 1);
  for (const Student& s : standin.students()) CHECK(s.prefs.size() == 6);
}

TEST_CASE("cli solve prints the optimum size") {
  TempFile file("fig1.spa", testing::kWorkedText);
  std::string out;
  CHECK(run_cli({"solve", "--exact", "--mode", "no-coalition", file.path}, &out) == 0);
  CHECK(out.find("size=3\n") == 0);
  CHECK(out.find("matching:") != std::string::npos);
}

TEST_CASE("cli check reports the worked coalition") {
  TempFile file("fig1b.spa", testing::kWorkedText);
  std::string out;
  CHECK(run_cli({"check", file.path, "--matching", "1:1 2:2 3:3"}, &out) == 0);
  CHECK(out == "COALITION s1,s2\n");
  CHECK(run_cli({"check", file.path, "--matching", "1:3 2:1"}, &out) == 0);
  CHECK(out == "STABLE\n");
  CHECK(run_cli({"check", file.path, "--matching", "2:1"}, &out) == 0);
  CHECK(out.find("BLOCK s1 p3 type=1b") != std::string::npos);
  CHECK(run_cli({"check", file.path, "--matching", "1:3 3:3"}, &out) == 0);
  CHECK(out.find("INFEASIBLE p3 oversubscribed (2 > 1)") != std::string::npos);
}

TEST_CASE("cli gen is deterministic and parseable") {
  std::string first, second;
  CHECK(run_cli({"gen", "--n1", "100", "--seed", "7"}, &first) == 0);
  CHECK(run_cli({"gen", "--n1", "100", "--seed", "7"}, &second) == 0);
  CHECK(first == second);
  const Instance inst = parse_instance_text(first);
  CHECK(inst.num_students() == 100);
  CHECK(inst.num_projects() == 50);
}

TEST_CASE("cli export-lp and approx round out the surface") {
  TempFile file("fig1c.spa", testing::kWorkedText);
  std::string lp;
  CHECK(run_cli({"export-lp", file.path, "--with-coalition"}, &lp) == 0);
  CHECK(lp.find("Maximize") == 0);
  CHECK(lp.find("v_1") != std::string::npos);
  std::string out;
  CHECK(run_cli({"approx", file.path, "--algo", "three-halves", "--runs", "100", "--seed", "1"},
                &out) == 0);
  CHECK(out.find("size=") == 0);
}

TEST_CASE("cli maps domain failures to exit codes") {
  std::string out, err;
  CHECK(run_cli({"solve", "missing-file.spa"}, &out, &err) == 1);
  CHECK(err.find("error:") == 0);
  TempFile bad("bad.spa", "1 1 1\nP 1 0 1\nL 1 1 : 1\nS 1 : 1\n");
  CHECK(run_cli({"solve", bad.path}, &out, &err) == 1);
  CHECK(run_cli({"nonsense"}, &out, &err) == 1);

  TempFile hard("hard.spa", testing::kPaddedCapacityText);
  CHECK(run_cli({"solve", hard.path, "--node-budget", "1"}, &out, &err) == 2);
  CHECK(out.find("budget exhausted") != std::string::npos);
}

TEST_CASE("cli exp subcommands write CSV") {
  TempFile csv("exp0.csv");
  std::string out;
  CHECK(run_cli({"exp0", "--sizes", "10", "--trials", "2", "--seed", "1", "--out", csv.path},
                &out) == 0);
  const std::string content = csv.read();
  CHECK(content.find("experiment,n1,n2,n3") == 0);
  CHECK(out.find("exp0") != std::string::npos);  // summary on stdout
  std::string csv_stdout;
  CHECK(run_cli({"exp1", "--sizes", "10", "--trials", "1", "--runs", "5", "--seed", "2"},
                &csv_stdout) == 0);
  CHECK(csv_stdout.find("experiment,n1,n2,n3") == 0);
}
