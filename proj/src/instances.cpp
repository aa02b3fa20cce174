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

#include "spap/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spap/rng.hpp"

namespace spap {

namespace {

// floor(ratio * n1) with a guard against values like 11 coming out as
// 10.999999... in binary floating point.
int scaled_count(double ratio, int n1) {
  return static_cast<int>(std::floor(ratio * n1 + 1e-9));
}

}  // namespace

Instance generate(const GenParams& params) {
  const int n1 = params.n1;
  if (n1 < 1) throw std::invalid_argument("n1 must be positive");
  if (params.project_ratio <= 0 || params.lecturer_ratio <= 0 || params.capacity_ratio <= 0) {
    throw std::invalid_argument("ratios must be positive");
  }
  const int n2 = scaled_count(params.project_ratio, n1);
  const int n3 = scaled_count(params.lecturer_ratio, n1);
  const int total_capacity = scaled_count(params.capacity_ratio, n1);
  if (n2 < 1) throw std::invalid_argument("project ratio yields no projects");
  if (n3 < 1) throw std::invalid_argument("lecturer ratio yields no lecturers");
  if (n3 > n2) throw std::invalid_argument("more lecturers than projects");
  if (total_capacity < n2) throw std::invalid_argument("total capacity below one per project");
  if (params.pref_len.min < 1 || params.pref_len.min > params.pref_len.max) {
    throw std::invalid_argument("invalid preference length bounds");
  }
  if (params.pref_len.max > n2) {
    throw std::invalid_argument("preference length exceeds project count");
  }

  Rng rng(params.seed);

  std::vector<int> capacity(n2, 1);
  for (int unit = 0; unit < total_capacity - n2; ++unit) {
    capacity[rng.below(n2)] += 1;
  }

  // Uniform project-to-lecturer assignment, redrawn until every lecturer
  // offers at least one project.
  std::vector<int> owner(n2, 0);
  for (;;) {
    std::vector<bool> covered(n3 + 1, false);
    for (int j = 0; j < n2; ++j) {
      owner[j] = 1 + rng.below(n3);
      covered[owner[j]] = true;
    }
    if (std::count(covered.begin() + 1, covered.end(), true) == n3) break;
  }

  std::vector<Project> projects(n2);
  for (int j = 0; j < n2; ++j) projects[j] = Project{j + 1, capacity[j], owner[j]};

  std::vector<Lecturer> lecturers(n3);
  for (int k = 1; k <= n3; ++k) {
    std::vector<int> offered;
    int max_cap = 0;
    int sum_cap = 0;
    for (int j = 0; j < n2; ++j) {
      if (owner[j] == k) {
        offered.push_back(j + 1);
        max_cap = std::max(max_cap, capacity[j]);
        sum_cap += capacity[j];
      }
    }
    const int d = rng.between(max_cap, sum_cap);
    rng.shuffle(offered);
    lecturers[k - 1] = Lecturer{k, d, std::move(offered)};
  }

  std::vector<Student> students(n1);
  std::vector<int> pool(n2);
  for (int i = 1; i <= n1; ++i) {
    const int len = params.pref_len.is_exact()
                        ? params.pref_len.min
                        : rng.between(params.pref_len.min, params.pref_len.max);
    std::iota(pool.begin(), pool.end(), 1);
    // Partial Fisher-Yates: the first len slots, in draw order, are the
    // strictly ordered preference list.
    for (int t = 0; t < len; ++t) {
      std::swap(pool[t], pool[t + rng.below(n2 - t)]);
    }
    students[i - 1] = Student{i, std::vector<int>(pool.begin(), pool.begin() + len)};
  }

  return Instance(std::move(students), std::move(projects), std::move(lecturers));
}

const char* to_string(PopularityMode mode) {
  switch (mode) {
    case PopularityMode::Random: return "random";
    case PopularityMode::Ascending: return "ascending";
    case PopularityMode::Descending: return "descending";
  }
  return "?";
}

PopularityMode popularity_mode_from_string(const std::string& name) {
  if (name == "random") return PopularityMode::Random;
  if (name == "ascending") return PopularityMode::Ascending;
  if (name == "descending") return PopularityMode::Descending;
  throw std::invalid_argument("unknown popularity mode '" + name + "'");
}

std::vector<int> acceptability_counts(const Instance& inst) {
  std::vector<int> counts(inst.num_projects() + 1, 0);
  for (const Student& s : inst.students()) {
    for (int j : s.prefs) counts[j] += 1;
  }
  return counts;
}

Instance derive_lecturer_prefs(const Instance& inst, PopularityMode mode, std::uint64_t seed) {
  const std::vector<int> counts = acceptability_counts(inst);
  Rng rng(seed);

  std::vector<Lecturer> lecturers = inst.lecturers();
  for (Lecturer& l : lecturers) {
    std::vector<int> order = l.prefs;
    std::sort(order.begin(), order.end());
    switch (mode) {
      case PopularityMode::Random:
        rng.shuffle(order);
        break;
      case PopularityMode::Ascending:
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return counts[a] < counts[b]; });
        break;
      case PopularityMode::Descending:
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return counts[a] > counts[b]; });
        break;
    }
    l.prefs = std::move(order);
  }
  return Instance(inst.students(), inst.projects(), std::move(lecturers));
}

}  // namespace spap
