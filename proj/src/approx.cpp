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

#include "spap/approx.hpp"

#include <deque>
#include <stdexcept>

#include "spap/rng.hpp"
#include "spap/stability.hpp"

namespace spap {

namespace {

// Shared proposal scheme. Students propose down their lists; a proposal to a
// full project, or to a full lecturer for a project ranked no better than the
// lecturer's worst non-empty project, deletes the list head. Otherwise the
// student is admitted, evicting a random student from the worst non-empty
// project when the lecturer is full. Once a lecturer is full it stays full
// and the rank of its worst non-empty project never worsens, which is what
// makes deletions permanent and the result blocking-pair-free.
//
// kiraly enables the 3/2 variant: a student whose list empties is promoted
// once (full list restored), and evictions prefer unpromoted students.
Matching propose(const Instance& inst, std::uint64_t seed, bool kiraly, ProposalStats* stats) {
  const int n1 = inst.num_students();
  const int n2 = inst.num_projects();
  Rng rng(seed);
  ProposalStats local;
  ProposalStats& st = stats ? *stats : local;

  std::vector<int> assignment(n1 + 1, 0);
  std::vector<int> head(n1 + 1, 0);  // index into the student's list
  std::vector<int> level(n1 + 1, 0);
  std::vector<int> project_load(n2 + 1, 0);
  std::vector<int> lecturer_load(inst.num_lecturers() + 1, 0);

  std::vector<int> order(n1);
  for (int i = 0; i < n1; ++i) order[i] = i + 1;
  rng.shuffle(order);
  std::deque<int> queue(order.begin(), order.end());

  auto worst_nonempty = [&](int k) -> int {
    const std::vector<int>& prefs = inst.lecturer(k).prefs;
    for (int pos = static_cast<int>(prefs.size()) - 1; pos >= 0; --pos) {
      if (project_load[prefs[pos]] > 0) return prefs[pos];
    }
    return 0;
  };

  long long total_len = 0;
  for (const Student& s : inst.students()) total_len += static_cast<int>(s.prefs.size());
  const long long iteration_bound = 8 * total_len + 8 * n1 + 16;
  long long iterations = 0;

  while (!queue.empty()) {
    if (++iterations > iteration_bound) {
      throw std::logic_error("proposal loop exceeded its work bound");
    }
    const int s = queue.front();
    queue.pop_front();
    const std::vector<int>& prefs = inst.student(s).prefs;

    if (head[s] == static_cast<int>(prefs.size())) {
      if (kiraly && level[s] == 0) {
        level[s] = 1;
        head[s] = 0;
        st.promotions += 1;
        queue.push_back(s);
      }
      continue;
    }

    const int p = prefs[head[s]];
    const int k = inst.owner(p);
    st.proposals += 1;

    const bool project_full = project_load[p] >= inst.project(p).capacity;
    const bool lecturer_full = lecturer_load[k] >= inst.lecturer(k).capacity;
    if (project_full ||
        (lecturer_full &&
         inst.lecturer_rank(k, p) >= inst.lecturer_rank(k, worst_nonempty(k)))) {
      head[s] += 1;
      st.deletions += 1;
      queue.push_back(s);
      continue;
    }

    if (lecturer_full) {
      const int worst = worst_nonempty(k);
      std::vector<int> candidates;
      for (int i = 1; i <= n1; ++i) {
        if (assignment[i] == worst) candidates.push_back(i);
      }
      if (kiraly) {
        std::vector<int> unpromoted;
        for (int i : candidates) {
          if (level[i] == 0) unpromoted.push_back(i);
        }
        if (!unpromoted.empty()) candidates = std::move(unpromoted);
      }
      const int victim = candidates[rng.below(static_cast<int>(candidates.size()))];
      assignment[victim] = 0;
      project_load[worst] -= 1;
      lecturer_load[k] -= 1;
      st.rejections += 1;
      queue.push_back(victim);
    }

    assignment[s] = p;
    project_load[p] += 1;
    lecturer_load[k] += 1;
  }

  Matching m(n1);
  for (int i = 1; i <= n1; ++i) {
    if (assignment[i] != 0) m.assign(i, assignment[i]);
  }
  return m;
}

}  // namespace

const char* to_string(ApproxAlgo a) {
  return a == ApproxAlgo::Two ? "two" : "three-halves";
}

ApproxAlgo approx_algo_from_string(const std::string& name) {
  if (name == "two") return ApproxAlgo::Two;
  if (name == "three-halves") return ApproxAlgo::ThreeHalves;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

Matching propose_two(const Instance& inst, std::uint64_t seed, ProposalStats* stats) {
  return propose(inst, seed, /*kiraly=*/false, stats);
}

Matching propose_three_halves(const Instance& inst, std::uint64_t seed, ProposalStats* stats) {
  return propose(inst, seed, /*kiraly=*/true, stats);
}

Matching approx_two(const Instance& inst, std::uint64_t seed, ProposalStats* stats) {
  return eliminate_coalitions(inst, propose_two(inst, seed, stats));
}

Matching approx_three_halves(const Instance& inst, std::uint64_t seed, ProposalStats* stats) {
  return eliminate_coalitions(inst, propose_three_halves(inst, seed, stats));
}

Matching best_of_runs(const Instance& inst, const ApproxConfig& cfg) {
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  Matching best;
  for (int r = 0; r < cfg.runs; ++r) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
    Matching m = cfg.algorithm == ApproxAlgo::Two ? approx_two(inst, seed)
                                                  : approx_three_halves(inst, seed);
    if (r == 0 || m.size() > best.size()) best = std::move(m);
  }
  return best;
}

}  // namespace spap
