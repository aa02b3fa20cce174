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

#ifndef SPAP_TESTS_FIXTURES_HPP_
#define SPAP_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <string>

#include "spap/instances.hpp"
#include "spap/model.hpp"

namespace spap::testing {

// The three-student worked example: unit project capacities, l1 with
// capacity 2 offering p2 > p1, l2 with capacity 1 offering p3. Its maximum
// stable matching has size 3.
inline const char* kWorkedText =
    "3 3 2\n"
    "P 1 1 1\n"
    "P 2 1 1\n"
    "P 3 1 2\n"
    "L 1 2 : 2 1\n"
    "L 2 1 : 3\n"
    "S 1 : 3 2 1\n"
    "S 2 : 1 2\n"
    "S 3 : 3\n";

inline Instance worked_instance() { return parse_instance_text(kWorkedText); }

// m1: both s1 and s2 on their first choices, s3 out; stable, size 2.
inline Matching worked_m1() { return parse_matching_literal("1:3 2:1", 3); }

// m2: everyone assigned but s1 and s2 would swap; admits the coalition
// {s1, s2}.
inline Matching worked_m2() { return parse_matching_literal("1:1 2:2 3:3", 3); }

// m3: the maximum stable matching, size 3.
inline Matching worked_m3() { return parse_matching_literal("1:2 2:1 3:3", 3); }

// Worked example with p2 removed: the unique maximum stable matching size
// drops below the student count.
inline const char* kNoSwingProjectText =
    "3 2 2\n"
    "P 1 1 1\n"
    "P 2 1 2\n"
    "L 1 2 : 1\n"
    "L 2 1 : 2\n"
    "S 1 : 2 1\n"
    "S 2 : 1\n"
    "S 3 : 2\n";

inline Instance no_swing_instance() { return parse_instance_text(kNoSwingProjectText); }

inline const char* kSingletonText =
    "1 1 1\n"
    "P 1 1 1\n"
    "L 1 1 : 1\n"
    "S 1 : 1\n";

inline Instance singleton_instance() { return parse_instance_text(kSingletonText); }

// Two students competing for one project, plus a project nobody wants. The
// optimum is 1 while the capacity bound alone allows 2, so an exact solve
// cannot be closed at the root.
inline const char* kPaddedCapacityText =
    "2 2 2\n"
    "P 1 1 1\n"
    "P 2 1 2\n"
    "L 1 1 : 1\n"
    "L 2 1 : 2\n"
    "S 1 : 1\n"
    "S 2 : 1\n";

inline Instance padded_capacity_instance() { return parse_instance_text(kPaddedCapacityText); }

// A blocking-pair-free matching whose coalition rotation goes wrong exists
// here: in {s1:p1, s2:p3}, pair (s1,p2) is shielded only by the type-1a
// clause (l1 ranks p1 over p2). Rotating the {s1,s2} envy cycle moves s1 to
// l2, and (s1,p2) re-enters as a type-1b blocking pair since l1 stays
// undersubscribed. The stable optimum {s1:p2, s2:p1} still has size 2.
inline const char* kRotationTrapText =
    "2 3 2\n"
    "P 1 1 1\n"
    "P 2 1 1\n"
    "P 3 1 2\n"
    "L 1 2 : 1 2\n"
    "L 2 1 : 3\n"
    "S 1 : 2 3 1\n"
    "S 2 : 1 3\n";

inline Instance rotation_trap_instance() { return parse_instance_text(kRotationTrapText); }

// Generator parameters with the preference range clamped to the project
// count, for sweeps over small n1 where the default [2,5] range is invalid.
inline GenParams small_params(int n1, std::uint64_t seed) {
  GenParams params;
  params.n1 = n1;
  const int n2 = n1 / 2;
  params.pref_len = PrefLen::range(std::min(2, n2), std::min(5, n2));
  params.seed = seed;
  return params;
}

}  // namespace spap::testing

#endif  // SPAP_TESTS_FIXTURES_HPP_
