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

#ifndef SPAP_INSTANCES_HPP_
#define SPAP_INSTANCES_HPP_

#include <cstdint>
#include <string>

#include "spap/model.hpp"

namespace spap {

// Student preference list length, either a uniform range or an exact value.
struct PrefLen {
  int min = 2;
  int max = 5;

  static PrefLen exact(int x) { return PrefLen{x, x}; }
  static PrefLen range(int lo, int hi) { return PrefLen{lo, hi}; }
  bool is_exact() const { return min == max; }
  std::string label() const {
    return is_exact() ? std::to_string(min) : std::to_string(min) + "-" + std::to_string(max);
  }
};

// Random-instance parameters. Counts derive from n1 by floor: n2 projects,
// n3 lecturers, and the total project capacity spread over the projects.
struct GenParams {
  int n1 = 10;
  double project_ratio = 0.5;
  double lecturer_ratio = 0.2;
  double capacity_ratio = 1.1;
  PrefLen pref_len{};
  std::uint64_t seed = 0;
};

// Deterministic in params.seed. Every project gets capacity 1 and the
// remaining units are spread uniformly; each lecturer offers at least one
// project; d_k is uniform between the largest and the summed capacity of the
// projects l_k offers.
Instance generate(const GenParams& params);

enum class PopularityMode { Random, Ascending, Descending };

const char* to_string(PopularityMode mode);
PopularityMode popularity_mode_from_string(const std::string& name);

// a_j: the number of students that find p_j acceptable.
std::vector<int> acceptability_counts(const Instance& inst);

// Copy of inst with each lecturer's list reordered: uniformly shuffled, or
// sorted by ascending/descending a_j with ties broken by ascending project id.
Instance derive_lecturer_prefs(const Instance& inst, PopularityMode mode, std::uint64_t seed);

}  // namespace spap

#endif  // SPAP_INSTANCES_HPP_
