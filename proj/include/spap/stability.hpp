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

#ifndef SPAP_STABILITY_HPP_
#define SPAP_STABILITY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "spap/model.hpp"

namespace spap {

class InfeasibleMatchingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BlockingPairsPresentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BlockType { Type1a, Type1b, Type1c };

const char* to_string(BlockType t);

struct BlockingPair {
  int student = 0;
  int project = 0;
  BlockType type = BlockType::Type1a;
  bool operator==(const BlockingPair&) const = default;
};

// Digraph of strict envy among assigned students: an arc (i, i') means s_i
// prefers M(s_i')'s project to her own. Adjacency lists are ascending.
struct EnvyGraph {
  int num_students = 0;
  std::vector<std::vector<int>> adj;  // adj[0] unused

  bool has_arc(int i, int ip) const;
  std::vector<std::pair<int, int>> arcs() const;
  int arc_count() const;
};

// Capacity/acceptability audit; empty result means m is a matching.
// Violations are returned rather than thrown so the CLI can print them all.
std::vector<std::string> check_feasible(const Instance& inst, const Matching& m);

// All blocking pairs of a feasible matching, students in id order and
// projects in preference order. A pair blocking under several clauses is
// reported under the lowest letter (1a < 1b < 1c).
std::vector<BlockingPair> find_blocking_pairs(const Instance& inst, const Matching& m);

EnvyGraph build_envy_graph(const Instance& inst, const Matching& m);

// Some directed cycle of g (length >= 2, consecutive arcs present), or
// nullopt when g is acyclic. Depth-first from the lowest student id, first
// cycle closed, so the result is deterministic.
std::optional<std::vector<int>> find_coalition(const EnvyGraph& g);

// Repeatedly rotates assignments along envy cycles until no coalition
// remains, preserving the matching size and every per-project and
// per-lecturer load. Rotation keeps all loads fixed but moves students
// between lecturers, which for some blocking-pair-free inputs introduces a
// new blocking pair; in that case the result is nullopt. Proposal-algorithm
// outputs are always rotation-safe.
std::optional<Matching> try_eliminate_coalitions(const Instance& inst, const Matching& m);

// As try_eliminate_coalitions, for callers whose inputs are known
// rotation-safe; fails loudly if a blocking pair was introduced.
Matching eliminate_coalitions(const Instance& inst, const Matching& m);

struct StabilityVerdict {
  enum class Kind { Stable, Infeasible, BlockingPairs, Coalition };
  Kind kind = Kind::Stable;
  std::vector<std::string> violations;
  std::vector<BlockingPair> blocking;
  std::vector<int> coalition;

  bool stable() const { return kind == Kind::Stable; }
};

StabilityVerdict is_stable(const Instance& inst, const Matching& m);

}  // namespace spap

#endif  // SPAP_STABILITY_HPP_
