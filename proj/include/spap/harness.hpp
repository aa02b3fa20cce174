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

#ifndef SPAP_HARNESS_HPP_
#define SPAP_HARNESS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spap/instances.hpp"
#include "spap/model.hpp"
#include "spap/solvers.hpp"

namespace spap {

// One algorithm run on one instance. Algorithm labels: A exact, B best of R
// runs of the 3/2-approximation, C a single 3/2 run, D best of R runs of the
// 2-approximation, E a single 2 run. B and C (and D and E) share the first
// run seed, so the best-of-R size dominates the single-run size pointwise.
struct ReportRow {
  int experiment = 0;
  int n1 = 0, n2 = 0, n3 = 0;
  std::string pref_len;
  std::uint64_t seed = 0;
  std::string mode;  // with-coalition/no-coalition, popularity mode, or "-"
  std::string algo;  // A..E
  int size = 0;
  std::optional<int> opt;
  std::optional<double> ratio;
  double time_ms = 0.0;
  std::optional<long long> nodes;
  bool budget_limited = false;  // rendered as a "!budget" suffix on mode
};

struct ExperimentReport {
  std::vector<ReportRow> rows;

  static const char* csv_header();
  std::string to_csv() const;
  void write_csv(const std::string& path) const;
  bool any_budget_limited() const;
};

// Exact-solver timing comparison, both coalition modes, preference lists
// drawn from [2,5].
ExperimentReport run_experiment_0(const std::vector<int>& sizes, int trials, SolveBudget budget,
                                  std::uint64_t seed);

// Five-algorithm size comparison over random instances of the given sizes.
ExperimentReport run_experiment_1(const std::vector<int>& sizes, int trials, int runs,
                                  SolveBudget budget, std::uint64_t seed);

// Five-algorithm comparison with exact preference-list lengths.
ExperimentReport run_experiment_2(int n1, const std::vector<int>& lengths, int trials, int runs,
                                  SolveBudget budget, std::uint64_t seed);

// Five algorithms under each lecturer-preference popularity mode.
ExperimentReport run_experiment_3(const std::vector<std::pair<std::string, Instance>>& instances,
                                  const std::vector<PopularityMode>& modes, int runs,
                                  SolveBudget budget, std::uint64_t seed);

// Size parameters of the published allocation rounds, used to generate
// stand-in instances (unit project capacities, exact list length).
struct Table2Shape {
  std::string label;
  int n1 = 0, n2 = 0, n3 = 0;
  int pref_len = 0;
};

std::vector<Table2Shape> table2_shapes();
Instance table2_standin(const Table2Shape& shape, std::uint64_t seed);

// Per-size mean summaries (stdout companions to the CSV).
std::string summarize_experiment(const ExperimentReport& report);
// Instance-by-mode grid of the five algorithm sizes.
std::string format_mode_grid(const ExperimentReport& report);

// Command line entry point; returns the process exit status (0 ok,
// 1 usage/validation error, 2 budget exhaustion).
int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spap

#endif  // SPAP_HARNESS_HPP_
