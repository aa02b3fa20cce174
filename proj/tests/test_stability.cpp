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
#include <algorithm>
#include <functional>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "spap/approx.hpp"
#include "spap/instances.hpp"
#include "spap/stability.hpp"

using namespace spap;

namespace {

// Clause-by-clause re-statement of the blocking-pair definition, independent
// of the production scan order; the test oracle for find_blocking_pairs.
bool blocks_by_definition(const Instance& inst, const Matching& m, int i, int j) {
  if (!inst.acceptable(i, j) || m.project_of(i) == j) return false;
  const int assigned = m.project_of(i);
  const bool improves =
      assigned == 0 || inst.student_rank(i, j) < inst.student_rank(i, assigned);
  if (!improves) return false;
  if (static_cast<int>(m.students_of_project(j).size()) >= inst.project(j).capacity) return false;
  const int k = inst.owner(j);
  int lecturer_load = 0;
  int worst_rank = 0;
  for (int q : inst.lecturer(k).prefs) {
    const int load = static_cast<int>(m.students_of_project(q).size());
    lecturer_load += load;
    if (load > 0) worst_rank = std::max(worst_rank, inst.lecturer_rank(k, q));
  }
  const bool in_mk = assigned != 0 && inst.owner(assigned) == k;
  if (in_mk) {
    return inst.lecturer_rank(k, j) < inst.lecturer_rank(k, assigned);  // 1a
  }
  if (lecturer_load < inst.lecturer(k).capacity) return true;           // 1b
  return worst_rank > inst.lecturer_rank(k, j);                         // 1c
}

std::set<std::pair<int, int>> blocking_set(const std::vector<BlockingPair>& pairs) {
  std::set<std::pair<int, int>> out;
  for (const BlockingPair& b : pairs) out.insert({b.student, b.project});
  return out;
}

std::set<std::pair<int, int>> definition_blocking_set(const Instance& inst, const Matching& m) {
  std::set<std::pair<int, int>> out;
  for (const Student& s : inst.students()) {
    for (int j : s.prefs) {
      if (blocks_by_definition(inst, m, s.id, j)) out.insert({s.id, j});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("feasibility accepts the worked matchings") {
  const Instance inst = testing::worked_instance();
  CHECK(check_feasible(inst, testing::worked_m1()).empty());
  CHECK(check_feasible(inst, testing::worked_m2()).empty());
  CHECK(check_feasible(inst, Matching(3)).empty());
}

TEST_CASE("feasibility reports oversubscription") {
  const Instance inst = testing::worked_instance();
  const Matching m = parse_matching_literal("1:3 3:3", 3);
  const std::vector<std::string> violations = check_feasible(inst, m);
  REQUIRE(violations.size() == 2);  // project and its unit-capacity lecturer
  CHECK(violations[0] == "p3 oversubscribed (2 > 1)");
  const Matching bad = parse_matching_literal("2:3", 3);
  CHECK(check_feasible(inst, bad) ==
        std::vector<std::string>{"s2 assigned unacceptable project p3"});
}

TEST_CASE("worked stable matchings admit no blocking pair") {
  const Instance inst = testing::worked_instance();
  CHECK(find_blocking_pairs(inst, testing::worked_m1()).empty());
  CHECK(find_blocking_pairs(inst, testing::worked_m3()).empty());
}

TEST_CASE("partial matching exposes type 1b pairs") {
  const Instance inst = testing::worked_instance();
  const Matching m = parse_matching_literal("2:1", 3);
  const std::vector<BlockingPair> pairs = find_blocking_pairs(inst, m);
  bool found = false;
  for (const BlockingPair& b : pairs) {
    if (b.student == 1 && b.project == 3) {
      found = true;
      CHECK(b.type == BlockType::Type1b);
    }
  }
  CHECK(found);
  CHECK(blocking_set(pairs) == definition_blocking_set(inst, m));
}

TEST_CASE("blocking pairs match the definition on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = generate(testing::small_params(8, seed));
    // Random feasible matchings, including partial ones.
    const Matching m = propose_two(inst, seed * 31 + 1);
    CHECK(blocking_set(find_blocking_pairs(inst, m)) == definition_blocking_set(inst, m));
  }
}

TEST_CASE("find_blocking_pairs rejects infeasible input") {
  const Instance inst = testing::worked_instance();
  CHECK_THROWS_AS(find_blocking_pairs(inst, parse_matching_literal("1:3 3:3", 3)),
                  InfeasibleMatchingError);
}

TEST_CASE("envy graph of the coalition matching matches the worked arcs") {
  const Instance inst = testing::worked_instance();
  const EnvyGraph g = build_envy_graph(inst, testing::worked_m2());
  const std::set<std::pair<int, int>> expected = {{1, 2}, {2, 1}, {1, 3}};
  const auto arcs = g.arcs();
  CHECK(std::set<std::pair<int, int>>(arcs.begin(), arcs.end()) == expected);
}

TEST_CASE("envy graph of the maximum matching has a single arc") {
  const Instance inst = testing::worked_instance();
  const EnvyGraph g = build_envy_graph(inst, testing::worked_m3());
  const auto arcs = g.arcs();
  CHECK(std::set<std::pair<int, int>>(arcs.begin(), arcs.end()) ==
        std::set<std::pair<int, int>>{{1, 3}});
}

TEST_CASE("empty matching yields an empty envy graph") {
  const Instance inst = testing::worked_instance();
  CHECK(build_envy_graph(inst, Matching(3)).arc_count() == 0);
}

TEST_CASE("coalition detection on the worked graphs") {
  const Instance inst = testing::worked_instance();
  const auto cycle = find_coalition(build_envy_graph(inst, testing::worked_m2()));
  REQUIRE(cycle.has_value());
  CHECK(std::set<int>(cycle->begin(), cycle->end()) == std::set<int>{1, 2});
  CHECK(!find_coalition(build_envy_graph(inst, testing::worked_m3())).has_value());
  CHECK(!find_coalition(build_envy_graph(inst, Matching(3))).has_value());
}

TEST_CASE("returned cycles are genuine cycles") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenParams params;
    params.n1 = 10;
    params.seed = seed;
    const Instance inst = generate(params);
    const Matching m = propose_three_halves(inst, seed + 1);
    const EnvyGraph g = build_envy_graph(inst, m);
    const auto cycle = find_coalition(g);
    if (!cycle) continue;
    REQUIRE(cycle->size() >= 2);
    for (std::size_t t = 0; t < cycle->size(); ++t) {
      CHECK(g.has_arc((*cycle)[t], (*cycle)[(t + 1) % cycle->size()]));
    }
  }
}

TEST_CASE("rotation turns the coalition matching into the stable one") {
  const Instance inst = testing::worked_instance();
  const Matching rotated = eliminate_coalitions(inst, testing::worked_m2());
  CHECK(rotated == testing::worked_m3());
  // Already coalition-free input is a fixed point.
  CHECK(eliminate_coalitions(inst, testing::worked_m3()) == testing::worked_m3());
}

TEST_CASE("elimination requires a blocking-pair-free matching") {
  const Instance inst = testing::worked_instance();
  CHECK_THROWS_AS(eliminate_coalitions(inst, parse_matching_literal("2:1", 3)),
                  BlockingPairsPresentError);
  CHECK_THROWS_AS(eliminate_coalitions(inst, parse_matching_literal("1:3 3:3", 3)),
                  InfeasibleMatchingError);
}

namespace {

void check_elimination(const Instance& inst, const Matching& before, int* rotated_cases) {
  if (find_coalition(build_envy_graph(inst, before))) *rotated_cases += 1;
  const Matching after = eliminate_coalitions(inst, before);
  CHECK(after.size() == before.size());
  CHECK(is_stable(inst, after).stable());
  for (int j = 1; j <= inst.num_projects(); ++j) {
    CHECK(after.students_of_project(j).size() == before.students_of_project(j).size());
  }
}

// Every matching over acceptable pairs, capacity-feasible or not; callers
// filter.
void enumerate_matchings(const Instance& inst, int student, Matching& m,
                         const std::function<void(const Matching&)>& visit) {
  if (student > inst.num_students()) {
    visit(m);
    return;
  }
  enumerate_matchings(inst, student + 1, m, visit);
  for (int j : inst.student(student).prefs) {
    m.assign(student, j);
    enumerate_matchings(inst, student + 1, m, visit);
    m.unassign(student);
  }
}

}  // namespace

TEST_CASE("elimination preserves loads and stability on proposal outputs") {
  int rotated_cases = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GenParams params;
    params.n1 = 12;
    params.seed = seed;
    const Instance inst = generate(params);
    const Matching before = propose_three_halves(inst, seed ^ 0x5a5a);
    REQUIRE(find_blocking_pairs(inst, before).empty());
    check_elimination(inst, before, &rotated_cases);
  }
}

TEST_CASE("elimination handles every blocking-pair-free matching of small instances") {
  int rotated_cases = 0;
  int unsafe_cases = 0;
  std::vector<Instance> instances = {testing::worked_instance()};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    instances.push_back(generate(testing::small_params(6, seed)));
  }
  for (const Instance& inst : instances) {
    Matching m(inst.num_students());
    enumerate_matchings(inst, 1, m, [&](const Matching& candidate) {
      if (!check_feasible(inst, candidate).empty()) return;
      if (!find_blocking_pairs(inst, candidate).empty()) return;
      if (!try_eliminate_coalitions(inst, candidate)) {
        // Some blocking-pair-free matchings are not rotation-safe; see the
        // rotation-trap case below.
        ++unsafe_cases;
        return;
      }
      check_elimination(inst, candidate, &rotated_cases);
    });
  }
  // The worked instance contributes at least one genuine rotation.
  CHECK(rotated_cases > 0);
  INFO("rotation-unsafe blocking-pair-free matchings seen: ", unsafe_cases);
}

TEST_CASE("rotation can introduce a blocking pair on the trap instance") {
  const Instance inst = testing::rotation_trap_instance();
  const Matching trap = parse_matching_literal("1:1 2:3", 2);
  REQUIRE(find_blocking_pairs(inst, trap).empty());
  REQUIRE(find_coalition(build_envy_graph(inst, trap)).has_value());
  CHECK(!try_eliminate_coalitions(inst, trap).has_value());
  CHECK_THROWS_AS(eliminate_coalitions(inst, trap), std::logic_error);
  // A same-size stable matching still exists.
  CHECK(is_stable(inst, parse_matching_literal("1:2 2:1", 2)).stable());
}

TEST_CASE("verdicts for the worked matchings") {
  const Instance inst = testing::worked_instance();
  CHECK(is_stable(inst, testing::worked_m1()).stable());
  const StabilityVerdict coalition = is_stable(inst, testing::worked_m2());
  CHECK(coalition.kind == StabilityVerdict::Kind::Coalition);
  CHECK(std::set<int>(coalition.coalition.begin(), coalition.coalition.end()) ==
        std::set<int>{1, 2});
  const StabilityVerdict blocked = is_stable(inst, parse_matching_literal("2:1", 3));
  CHECK(blocked.kind == StabilityVerdict::Kind::BlockingPairs);
  CHECK(!blocked.blocking.empty());
  const StabilityVerdict infeasible = is_stable(inst, parse_matching_literal("1:3 3:3", 3));
  CHECK(infeasible.kind == StabilityVerdict::Kind::Infeasible);
}
