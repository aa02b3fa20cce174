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

#ifndef SPAP_SOLVERS_HPP_
#define SPAP_SOLVERS_HPP_

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "spap/model.hpp"

namespace spap {

enum class SolveMode { WithCoalition, NoCoalitionRotate };

const char* to_string(SolveMode mode);
SolveMode solve_mode_from_string(const std::string& name);

struct OptimalResult {
  Matching matching;
  int size = 0;
  long long nodes = 0;
  double time_ms = 0.0;
  SolveMode mode = SolveMode::NoCoalitionRotate;
};

struct EnumBudget {
  long long max_nodes = 500'000'000;
};

// Enumeration search space larger than the configured node budget.
class EnumBudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Branch-and-bound budget exhausted; carries the best incumbent found, which
// is a valid lower bound on the optimum.
class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, OptimalResult incumbent)
      : std::runtime_error(what), incumbent_(std::move(incumbent)) {}
  const OptimalResult& incumbent() const { return incumbent_; }
  bool is_lower_bound() const { return true; }

 private:
  OptimalResult incumbent_;
};

// Brute-force ground truth, intended for n1 up to roughly 12: depth-first
// over students (each takes an acceptable project with residual capacity or
// stays unassigned), with every leaf checked for feasibility, blocking pairs
// and coalitions. yield receives each stable matching; return false to stop.
void enumerate_stable(const Instance& inst, const std::function<bool(const Matching&)>& yield,
                      EnumBudget budget = {});

std::vector<Matching> all_stable(const Instance& inst, EnumBudget budget = {});

// Maximum-cardinality stable matching by exhaustive enumeration; ties break
// to the lexicographically smallest assignment vector.
OptimalResult max_stable_oracle(const Instance& inst, EnumBudget budget = {});

struct SolveBudget {
  long long max_nodes = 100'000'000;
  double max_ms = std::numeric_limits<double>::infinity();
};

// Exact maximizer: branch-and-bound over the assignment variables of the
// integer program, one student per level in preference order with an
// "unassigned" branch, bounded by assigned-so-far plus students left (capped
// by residual capacity). A leaf is accepted iff the full model row set holds
// for the induced variable assignment. In NoCoalitionRotate mode the
// coalition rows are omitted and each incumbent has its coalitions rotated
// away instead, rejecting the rare leaves whose rotation would introduce a
// blocking pair. The incumbent starts from one 3/2-approximation run.
OptimalResult solve_exact(const Instance& inst, SolveMode mode = SolveMode::NoCoalitionRotate,
                          SolveBudget budget = {});

}  // namespace spap

#endif  // SPAP_SOLVERS_HPP_
