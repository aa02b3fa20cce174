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

#ifndef SPAP_APPROX_HPP_
#define SPAP_APPROX_HPP_

#include <cstdint>

#include "spap/model.hpp"

namespace spap {

enum class ApproxAlgo { Two, ThreeHalves };

const char* to_string(ApproxAlgo a);
ApproxAlgo approx_algo_from_string(const std::string& name);

struct ApproxConfig {
  ApproxAlgo algorithm = ApproxAlgo::ThreeHalves;
  int runs = 1;
  std::uint64_t seed = 0;
};

// Work counters for the proposal loops. deletions counts list-entry removals
// (list traversal work): at most sum |A_i| for the 2-approximation and at
// most twice that for the 3/2-approximation, whose single promotion restores
// a student's list once.
struct ProposalStats {
  long long proposals = 0;
  long long deletions = 0;
  long long rejections = 0;
  long long promotions = 0;
};

// Proposal phases alone: blocking-pair-free, but coalitions may remain.
Matching propose_two(const Instance& inst, std::uint64_t seed, ProposalStats* stats = nullptr);
Matching propose_three_halves(const Instance& inst, std::uint64_t seed,
                              ProposalStats* stats = nullptr);

// Full algorithms: proposal phase followed by coalition elimination, so the
// result is stable. Randomness covers the initial proposal order and
// rejection tie-breaks only.
Matching approx_two(const Instance& inst, std::uint64_t seed, ProposalStats* stats = nullptr);
Matching approx_three_halves(const Instance& inst, std::uint64_t seed,
                             ProposalStats* stats = nullptr);

// Largest matching over cfg.runs executions seeded cfg.seed, cfg.seed + 1,
// ...; ties keep the earliest run, so the result is deterministic in cfg.
Matching best_of_runs(const Instance& inst, const ApproxConfig& cfg);

}  // namespace spap

#endif  // SPAP_APPROX_HPP_
