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

#include "spap/solvers.hpp"

#include <algorithm>
#include <chrono>

#include "spap/approx.hpp"
#include "spap/ip_model.hpp"
#include "spap/stability.hpp"

namespace spap {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Seed for the single 3/2-approximation run that initialises the incumbent.
constexpr std::uint64_t kIncumbentSeed = 1;

// Dense lookup tables for the search hot paths; the Instance's list scans are
// fine elsewhere but too slow inside million-node searches.
struct Tables {
  int n1, n2, n3;
  std::vector<std::vector<int>> prefs;  // [i], student lists
  std::vector<std::vector<int>> srank;  // [i][j], 0 = not acceptable
  std::vector<std::vector<int>> lrank;  // [k][j], 0 = not offered
  std::vector<std::vector<int>> offered;  // [k], lecturer lists
  std::vector<int> pcap, powner, lcap;

  explicit Tables(const Instance& inst)
      : n1(inst.num_students()),
        n2(inst.num_projects()),
        n3(inst.num_lecturers()),
        prefs(n1 + 1),
        srank(n1 + 1, std::vector<int>(n2 + 1, 0)),
        lrank(n3 + 1, std::vector<int>(n2 + 1, 0)),
        offered(n3 + 1),
        pcap(n2 + 1, 0),
        powner(n2 + 1, 0),
        lcap(n3 + 1, 0) {
    for (const Student& s : inst.students()) {
      prefs[s.id] = s.prefs;
      for (int pos = 0; pos < static_cast<int>(s.prefs.size()); ++pos) {
        srank[s.id][s.prefs[pos]] = pos + 1;
      }
    }
    for (const Project& p : inst.projects()) {
      pcap[p.id] = p.capacity;
      powner[p.id] = p.lecturer;
    }
    for (const Lecturer& l : inst.lecturers()) {
      lcap[l.id] = l.capacity;
      offered[l.id] = l.prefs;
      for (int pos = 0; pos < static_cast<int>(l.prefs.size()); ++pos) {
        lrank[l.id][l.prefs[pos]] = pos + 1;
      }
    }
  }
};

// Shared state for the depth-first searches: loads, the partial assignment,
// and the "must fill" bookkeeping. When a student is assigned a project, any
// project she and the lecturer both strictly prefer (same lecturer) must be
// full in every acceptable leaf, else it forms a type 1a blocking pair;
// deficit tracks the unfilled capacity over all such demanded projects.
struct SearchState {
  const Tables& t;
  std::vector<int> assign;
  std::vector<int> pload, lload;
  std::vector<int> demand;
  int assigned = 0;
  int deficit = 0;

  explicit SearchState(const Tables& tables)
      : t(tables),
        assign(tables.n1 + 1, 0),
        pload(tables.n2 + 1, 0),
        lload(tables.n3 + 1, 0),
        demand(tables.n2 + 1, 0) {}

  void add_demand(int j) {
    if (demand[j]++ == 0) deficit += t.pcap[j] - pload[j];
  }
  void remove_demand(int j) {
    if (--demand[j] == 0) deficit -= t.pcap[j] - pload[j];
  }

  void place(int i, int j) {
    assign[i] = j;
    pload[j] += 1;
    lload[t.powner[j]] += 1;
    assigned += 1;
    if (demand[j] > 0) deficit -= 1;
    const int k = t.powner[j];
    const std::vector<int>& list = t.prefs[i];
    const int my_lrank = t.lrank[k][j];
    for (int q : list) {
      if (q == j) break;
      if (t.powner[q] == k && t.lrank[k][q] < my_lrank) add_demand(q);
    }
  }

  void unplace(int i, int j) {
    const int k = t.powner[j];
    const std::vector<int>& list = t.prefs[i];
    const int my_lrank = t.lrank[k][j];
    for (int q : list) {
      if (q == j) break;
      if (t.powner[q] == k && t.lrank[k][q] < my_lrank) remove_demand(q);
    }
    if (demand[j] > 0) deficit += 1;
    assign[i] = 0;
    pload[j] -= 1;
    lload[k] -= 1;
    assigned -= 1;
  }

  // Direct transcription of the blocking-pair definition against the current
  // complete assignment.
  bool has_blocking_pair() const {
    std::vector<int> worst(t.n3 + 1, 0);
    for (int k = 1; k <= t.n3; ++k) {
      const std::vector<int>& off = t.offered[k];
      for (int pos = static_cast<int>(off.size()) - 1; pos >= 0; --pos) {
        if (pload[off[pos]] > 0) {
          worst[k] = pos + 1;
          break;
        }
      }
    }
    for (int i = 1; i <= t.n1; ++i) {
      const int a = assign[i];
      for (int j : t.prefs[i]) {
        if (j == a) break;  // remaining entries are no improvement
        if (pload[j] >= t.pcap[j]) continue;
        const int k = t.powner[j];
        if (a != 0 && t.powner[a] == k) {
          if (t.lrank[k][j] < t.lrank[k][a]) return true;  // 1a
          continue;
        }
        if (lload[k] < t.lcap[k]) return true;          // 1b
        if (worst[k] > t.lrank[k][j]) return true;      // 1c
      }
    }
    return false;
  }

  bool has_coalition() const {
    std::vector<std::vector<int>> adj(t.n1 + 1);
    for (int i = 1; i <= t.n1; ++i) {
      if (assign[i] == 0) continue;
      const int mine = t.srank[i][assign[i]];
      for (int ip = 1; ip <= t.n1; ++ip) {
        if (ip == i || assign[ip] == 0) continue;
        const int theirs = t.srank[i][assign[ip]];
        if (theirs != 0 && theirs < mine) adj[i].push_back(ip);
      }
    }
    enum { White, Grey, Black };
    std::vector<int> color(t.n1 + 1, White);
    auto dfs = [&](auto&& self, int u) -> bool {
      color[u] = Grey;
      for (int v : adj[u]) {
        if (color[v] == Grey) return true;
        if (color[v] == White && self(self, v)) return true;
      }
      color[u] = Black;
      return false;
    };
    for (int u = 1; u <= t.n1; ++u) {
      if (color[u] == White && dfs(dfs, u)) return true;
    }
    return false;
  }

  Matching to_matching() const {
    Matching m(t.n1);
    for (int i = 1; i <= t.n1; ++i) {
      if (assign[i] != 0) m.assign(i, assign[i]);
    }
    return m;
  }
};

class StableEnumerator {
 public:
  StableEnumerator(const Instance& inst, EnumBudget budget,
                   std::function<bool(const Matching&)> yield)
      : tables_(inst), state_(tables_), budget_(budget), yield_(std::move(yield)) {}

  void run() { recurse(1); }
  long long nodes() const { return nodes_; }

 private:
  bool recurse(int i) {
    if (++nodes_ > budget_.max_nodes) {
      throw EnumBudgetExceededError("enumeration exceeded " +
                                    std::to_string(budget_.max_nodes) + " nodes");
    }
    const int remaining = tables_.n1 - i + 1;
    if (state_.deficit > remaining) return true;  // demanded capacity unfillable
    if (i > tables_.n1) return leaf();
    for (int j : tables_.prefs[i]) {
      if (state_.pload[j] >= tables_.pcap[j]) continue;
      if (state_.lload[tables_.powner[j]] >= tables_.lcap[tables_.powner[j]]) continue;
      state_.place(i, j);
      const bool keep_going = recurse(i + 1);
      state_.unplace(i, j);
      if (!keep_going) return false;
    }
    return recurse(i + 1);  // leave s_i unassigned
  }

  bool leaf() {
    if (state_.deficit != 0) return true;
    if (state_.has_blocking_pair()) return true;
    if (state_.has_coalition()) return true;
    return yield_(state_.to_matching());
  }

  Tables tables_;
  SearchState state_;
  EnumBudget budget_;
  std::function<bool(const Matching&)> yield_;
  long long nodes_ = 0;
};

// Branch-and-bound over the assignment variables of the integer program. The
// search mirrors the enumerator's branching; a complete assignment is
// accepted only if every row of the model holds for the induced variable
// values.
class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, SolveMode mode, SolveBudget budget)
      : inst_(inst),
        mode_(mode),
        budget_(budget),
        model_(build_model(inst, mode == SolveMode::WithCoalition)),
        tables_(inst),
        state_(tables_),
        values_(model_.num_vars(), 0) {
    rows_split_ = 0;
    while (rows_split_ < static_cast<int>(model_.rows().size()) &&
           model_.rows()[rows_split_].family <= 9) {
      ++rows_split_;
    }
  }

  OptimalResult solve() {
    start_ = Clock::now();
    Matching incumbent = approx_three_halves(inst_, kIncumbentSeed);
    best_ = incumbent;
    best_size_ = incumbent.size();
    try {
      recurse(1);
    } catch (const BudgetExceededError&) {
      throw BudgetExceededError("exact solve budget exhausted", finish());
    }
    return finish();
  }

 private:
  OptimalResult finish() {
    OptimalResult result;
    result.mode = mode_;
    result.matching = best_;
    result.size = best_.size();
    result.nodes = nodes_;
    result.time_ms = ms_since(start_);
    return result;
  }

  void charge_node() {
    if (++nodes_ > budget_.max_nodes) {
      throw BudgetExceededError("node budget exhausted", OptimalResult{});
    }
    if ((nodes_ & 1023) == 0 && ms_since(start_) > budget_.max_ms) {
      throw BudgetExceededError("time budget exhausted", OptimalResult{});
    }
  }

  // Admissible completion bound: unbranched students, further capped by the
  // residual capacity still reachable through the lecturers.
  int completion_bound(int i) const {
    const int remaining = tables_.n1 - i + 1;
    int residual = 0;
    for (int k = 1; k <= tables_.n3; ++k) {
      int project_residual = 0;
      for (int j : tables_.offered[k]) project_residual += tables_.pcap[j] - state_.pload[j];
      residual += std::min(tables_.lcap[k] - state_.lload[k], project_residual);
      if (residual >= remaining) break;
    }
    return state_.assigned + std::min(remaining, residual);
  }

  void recurse(int i) {
    charge_node();
    if (i > tables_.n1) {
      if (state_.assigned > best_size_ && state_.deficit == 0 && leaf_feasible()) {
        Matching candidate = state_.to_matching();
        if (mode_ == SolveMode::NoCoalitionRotate) {
          // Without the coalition rows a leaf is only blocking-pair-free.
          // Accept it only if its coalitions rotate away cleanly; a maximum
          // stable matching is itself such a leaf, so the optimum over
          // rotation-safe leaves is exactly the maximum stable size.
          std::optional<Matching> rotated = try_eliminate_coalitions(inst_, candidate);
          if (!rotated) return;
          candidate = *std::move(rotated);
        }
        best_ = std::move(candidate);
        best_size_ = state_.assigned;
      }
      return;
    }
    if (state_.deficit > tables_.n1 - i + 1) return;
    if (completion_bound(i) <= best_size_) return;
    for (int j : tables_.prefs[i]) {
      if (state_.pload[j] >= tables_.pcap[j]) continue;
      if (state_.lload[tables_.powner[j]] >= tables_.lcap[tables_.powner[j]]) continue;
      state_.place(i, j);
      recurse(i + 1);
      state_.unplace(i, j);
    }
    recurse(i + 1);
  }

  bool eval_rows(int from, int to) const {
    const std::vector<IpRow>& rows = model_.rows();
    for (int r = from; r < to; ++r) {
      long long lhs = 0;
      for (const auto& [var, coef] : rows[r].terms) {
        lhs += static_cast<long long>(coef) * values_[var];
      }
      if (rows[r].sense == RowSense::Le ? lhs > rows[r].rhs : lhs < rows[r].rhs) return false;
    }
    return true;
  }

  bool leaf_feasible() {
    std::fill(values_.begin(), values_.end(), 0);
    for (int i = 1; i <= tables_.n1; ++i) {
      if (state_.assign[i] != 0) values_[model_.x_var(i, state_.assign[i])] = 1;
    }
    for (int j = 1; j <= tables_.n2; ++j) {
      if (state_.pload[j] < tables_.pcap[j]) values_[model_.alpha_var(j)] = 1;
    }
    for (int k = 1; k <= tables_.n3; ++k) {
      if (state_.lload[k] < tables_.lcap[k]) values_[model_.delta_var(k)] = 1;
    }
    for (int j = 1; j <= tables_.n2; ++j) {
      const int k = tables_.powner[j];
      int weakly_better = 0;
      const int my_rank = tables_.lrank[k][j];
      for (int q = 0; q < my_rank; ++q) weakly_better += state_.pload[tables_.offered[k][q]];
      if (weakly_better < tables_.lcap[k]) values_[model_.eta_var(j)] = 1;
    }
    if (!eval_rows(0, rows_split_)) return false;

    if (model_.with_coalition) {
      // Envy arcs and topological labels; a cycle means no label assignment
      // can satisfy the ordering rows.
      std::vector<std::vector<int>> adj(tables_.n1 + 1);
      std::vector<int> indegree(tables_.n1 + 1, 0);
      for (int i = 1; i <= tables_.n1; ++i) {
        if (state_.assign[i] == 0) continue;
        const int mine = tables_.srank[i][state_.assign[i]];
        for (int ip = 1; ip <= tables_.n1; ++ip) {
          if (ip == i || state_.assign[ip] == 0) continue;
          const int theirs = tables_.srank[i][state_.assign[ip]];
          if (theirs != 0 && theirs < mine) {
            adj[i].push_back(ip);
            indegree[ip] += 1;
            values_[model_.e_var(i, ip)] = 1;
          }
        }
      }
      std::vector<bool> placed(tables_.n1 + 1, false);
      for (int label = 1; label <= tables_.n1; ++label) {
        int pick = 0;
        for (int i = 1; i <= tables_.n1; ++i) {
          if (!placed[i] && indegree[i] == 0) {
            pick = i;
            break;
          }
        }
        if (pick == 0) return false;
        placed[pick] = true;
        values_[model_.v_var(pick)] = label;
        for (int v : adj[pick]) indegree[v] -= 1;
      }
      if (!eval_rows(rows_split_, static_cast<int>(model_.rows().size()))) return false;
    }
    return true;
  }

  const Instance& inst_;
  SolveMode mode_;
  SolveBudget budget_;
  IpModel model_;
  Tables tables_;
  SearchState state_;
  std::vector<int> values_;
  int rows_split_ = 0;
  Matching best_;
  int best_size_ = -1;
  long long nodes_ = 0;
  Clock::time_point start_;
};

}  // namespace

const char* to_string(SolveMode mode) {
  return mode == SolveMode::WithCoalition ? "with-coalition" : "no-coalition";
}

SolveMode solve_mode_from_string(const std::string& name) {
  if (name == "with-coalition") return SolveMode::WithCoalition;
  if (name == "no-coalition") return SolveMode::NoCoalitionRotate;
  throw std::invalid_argument("unknown solve mode '" + name + "'");
}

void enumerate_stable(const Instance& inst, const std::function<bool(const Matching&)>& yield,
                      EnumBudget budget) {
  StableEnumerator(inst, budget, yield).run();
}

std::vector<Matching> all_stable(const Instance& inst, EnumBudget budget) {
  std::vector<Matching> out;
  enumerate_stable(
      inst,
      [&](const Matching& m) {
        out.push_back(m);
        return true;
      },
      budget);
  return out;
}

OptimalResult max_stable_oracle(const Instance& inst, EnumBudget budget) {
  const auto start = Clock::now();
  Matching best;
  bool have_best = false;
  StableEnumerator enumerator(inst, budget, [&](const Matching& m) {
    if (!have_best || m.size() > best.size() ||
        (m.size() == best.size() && m.assignment_vector() < best.assignment_vector())) {
      best = m;
      have_best = true;
    }
    return true;
  });
  enumerator.run();
  // Every instance admits a stable matching (the proposal algorithms always
  // produce one), so enumeration cannot come back empty.
  if (!have_best) throw std::logic_error("enumeration found no stable matching");

  OptimalResult result;
  result.matching = best;
  result.size = best.size();
  result.nodes = enumerator.nodes();
  result.time_ms = ms_since(start);
  result.mode = SolveMode::WithCoalition;
  return result;
}

OptimalResult solve_exact(const Instance& inst, SolveMode mode, SolveBudget budget) {
  return BranchAndBound(inst, mode, budget).solve();
}

}  // namespace spap
