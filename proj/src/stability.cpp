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

#include "spap/stability.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace spap {

namespace {

struct Loads {
  std::vector<int> project;   // |M(p_j)| by project id
  std::vector<int> lecturer;  // |M(l_k)| by lecturer id
};

Loads count_loads(const Instance& inst, const Matching& m) {
  Loads loads{std::vector<int>(inst.num_projects() + 1, 0),
              std::vector<int>(inst.num_lecturers() + 1, 0)};
  for (const auto& [s, p] : m.pairs()) {
    loads.project[p] += 1;
    loads.lecturer[inst.owner(p)] += 1;
  }
  return loads;
}

// Rank of l_k's worst non-empty project, 0 when M(l_k) is empty.
std::vector<int> worst_nonempty_rank(const Instance& inst, const Loads& loads) {
  std::vector<int> worst(inst.num_lecturers() + 1, 0);
  for (const Lecturer& l : inst.lecturers()) {
    const std::vector<int>& prefs = l.prefs;
    for (int pos = static_cast<int>(prefs.size()) - 1; pos >= 0; --pos) {
      if (loads.project[prefs[pos]] > 0) {
        worst[l.id] = pos + 1;
        break;
      }
    }
  }
  return worst;
}

}  // namespace

const char* to_string(BlockType t) {
  switch (t) {
    case BlockType::Type1a: return "1a";
    case BlockType::Type1b: return "1b";
    case BlockType::Type1c: return "1c";
  }
  return "?";
}

bool EnvyGraph::has_arc(int i, int ip) const {
  const std::vector<int>& out = adj[i];
  return std::binary_search(out.begin(), out.end(), ip);
}

std::vector<std::pair<int, int>> EnvyGraph::arcs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= num_students; ++i) {
    for (int ip : adj[i]) out.emplace_back(i, ip);
  }
  return out;
}

int EnvyGraph::arc_count() const {
  int n = 0;
  for (int i = 1; i <= num_students; ++i) n += static_cast<int>(adj[i].size());
  return n;
}

std::vector<std::string> check_feasible(const Instance& inst, const Matching& m) {
  std::vector<std::string> violations;
  if (m.num_students() != inst.num_students()) {
    violations.push_back("matching covers " + std::to_string(m.num_students()) +
                         " students, instance has " + std::to_string(inst.num_students()));
    return violations;
  }
  Loads loads{std::vector<int>(inst.num_projects() + 1, 0),
              std::vector<int>(inst.num_lecturers() + 1, 0)};
  for (const auto& [s, p] : m.pairs()) {
    if (p < 1 || p > inst.num_projects()) {
      violations.push_back("s" + std::to_string(s) + " assigned unknown project p" +
                           std::to_string(p));
      continue;
    }
    if (!inst.acceptable(s, p)) {
      violations.push_back("s" + std::to_string(s) + " assigned unacceptable project p" +
                           std::to_string(p));
    }
    loads.project[p] += 1;
    loads.lecturer[inst.owner(p)] += 1;
  }
  for (const Project& p : inst.projects()) {
    if (loads.project[p.id] > p.capacity) {
      violations.push_back("p" + std::to_string(p.id) + " oversubscribed (" +
                           std::to_string(loads.project[p.id]) + " > " +
                           std::to_string(p.capacity) + ")");
    }
  }
  for (const Lecturer& l : inst.lecturers()) {
    if (loads.lecturer[l.id] > l.capacity) {
      violations.push_back("l" + std::to_string(l.id) + " oversubscribed (" +
                           std::to_string(loads.lecturer[l.id]) + " > " +
                           std::to_string(l.capacity) + ")");
    }
  }
  return violations;
}

std::vector<BlockingPair> find_blocking_pairs(const Instance& inst, const Matching& m) {
  const std::vector<std::string> violations = check_feasible(inst, m);
  if (!violations.empty()) {
    std::ostringstream msg;
    msg << "matching is infeasible:";
    for (const std::string& v : violations) msg << ' ' << v << ';';
    throw InfeasibleMatchingError(msg.str());
  }

  const Loads loads = count_loads(inst, m);
  const std::vector<int> worst = worst_nonempty_rank(inst, loads);

  std::vector<BlockingPair> blocking;
  for (const Student& s : inst.students()) {
    const int assigned = m.project_of(s.id);
    for (int j : s.prefs) {
      // Preference order: once the assigned project is reached, no remaining
      // entry is an improvement for s.
      if (j == assigned) break;
      const int k = inst.owner(j);
      if (loads.project[j] >= inst.project(j).capacity) continue;  // p_j full
      const bool same_lecturer = assigned != 0 && inst.owner(assigned) == k;
      if (same_lecturer) {
        if (inst.lecturer_prefers(k, j, assigned)) {
          blocking.push_back({s.id, j, BlockType::Type1a});
        }
        continue;
      }
      if (loads.lecturer[k] < inst.lecturer(k).capacity) {
        blocking.push_back({s.id, j, BlockType::Type1b});
        continue;
      }
      if (worst[k] > inst.lecturer_rank(k, j)) {
        blocking.push_back({s.id, j, BlockType::Type1c});
      }
    }
  }
  return blocking;
}

EnvyGraph build_envy_graph(const Instance& inst, const Matching& m) {
  const std::vector<std::string> violations = check_feasible(inst, m);
  if (!violations.empty()) {
    throw InfeasibleMatchingError("matching is infeasible: " + violations.front());
  }
  const int n1 = inst.num_students();
  EnvyGraph g{n1, std::vector<std::vector<int>>(n1 + 1)};
  for (int i = 1; i <= n1; ++i) {
    const int mine = m.project_of(i);
    if (mine == 0) continue;
    const int my_rank = inst.student_rank(i, mine);
    for (int ip = 1; ip <= n1; ++ip) {
      if (ip == i) continue;
      const int theirs = m.project_of(ip);
      if (theirs == 0 || !inst.acceptable(i, theirs)) continue;
      if (inst.student_rank(i, theirs) < my_rank) g.adj[i].push_back(ip);
    }
  }
  return g;
}

std::optional<std::vector<int>> find_coalition(const EnvyGraph& g) {
  enum { White, Grey, Black };
  std::vector<int> color(g.num_students + 1, White);
  std::vector<int> path;

  // Recursive DFS; returns the cycle found, if any.
  std::optional<std::vector<int>> cycle;
  auto dfs = [&](auto&& self, int u) -> bool {
    color[u] = Grey;
    path.push_back(u);
    for (int v : g.adj[u]) {
      if (color[v] == Grey) {
        const auto it = std::find(path.begin(), path.end(), v);
        cycle = std::vector<int>(it, path.end());
        return true;
      }
      if (color[v] == White && self(self, v)) return true;
    }
    path.pop_back();
    color[u] = Black;
    return false;
  };

  for (int u = 1; u <= g.num_students; ++u) {
    if (color[u] == White && dfs(dfs, u)) return cycle;
  }
  return std::nullopt;
}

std::optional<Matching> try_eliminate_coalitions(const Instance& inst, const Matching& m) {
  const std::vector<std::string> violations = check_feasible(inst, m);
  if (!violations.empty()) {
    throw InfeasibleMatchingError("matching is infeasible: " + violations.front());
  }
  if (!find_blocking_pairs(inst, m).empty()) {
    throw BlockingPairsPresentError("matching admits a blocking pair");
  }

  const Loads before = count_loads(inst, m);
  Matching out = m;

  // Each rotation strictly improves every student on the cycle, so the total
  // assigned rank strictly decreases; that bounds the number of rotations.
  long long max_rotations = 1;
  for (const Student& s : inst.students()) max_rotations += static_cast<int>(s.prefs.size());
  for (long long round = 0;; ++round) {
    if (round > max_rotations) {
      throw std::logic_error("coalition elimination failed to terminate");
    }
    const EnvyGraph g = build_envy_graph(inst, out);
    const std::optional<std::vector<int>> cycle = find_coalition(g);
    if (!cycle) break;
    const std::vector<int>& c = *cycle;
    const int r = static_cast<int>(c.size());
    std::vector<int> targets(r);
    for (int t = 0; t < r; ++t) targets[t] = out.project_of(c[(t + 1) % r]);
    for (int t = 0; t < r; ++t) out.assign(c[t], targets[t]);
  }

  const Loads after = count_loads(inst, out);
  if (before.project != after.project || before.lecturer != after.lecturer) {
    throw std::logic_error("coalition elimination changed project or lecturer loads");
  }
  if (out.size() != m.size()) {
    throw std::logic_error("coalition elimination changed the matching size");
  }
  // Rotation moves students between lecturers, so a pair previously shielded
  // by the type-1a clause can re-enter under 1b or 1c (and vice versa within
  // one lecturer). The input decides whether that happens.
  if (!find_blocking_pairs(inst, out).empty()) {
    return std::nullopt;
  }
  return out;
}

Matching eliminate_coalitions(const Instance& inst, const Matching& m) {
  std::optional<Matching> out = try_eliminate_coalitions(inst, m);
  if (!out) {
    throw std::logic_error("coalition elimination introduced a blocking pair");
  }
  return *std::move(out);
}

StabilityVerdict is_stable(const Instance& inst, const Matching& m) {
  StabilityVerdict verdict;
  verdict.violations = check_feasible(inst, m);
  if (!verdict.violations.empty()) {
    verdict.kind = StabilityVerdict::Kind::Infeasible;
    return verdict;
  }
  verdict.blocking = find_blocking_pairs(inst, m);
  if (!verdict.blocking.empty()) {
    verdict.kind = StabilityVerdict::Kind::BlockingPairs;
    return verdict;
  }
  const std::optional<std::vector<int>> cycle = find_coalition(build_envy_graph(inst, m));
  if (cycle) {
    verdict.kind = StabilityVerdict::Kind::Coalition;
    verdict.coalition = *cycle;
    return verdict;
  }
  verdict.kind = StabilityVerdict::Kind::Stable;
  return verdict;
}

}  // namespace spap
