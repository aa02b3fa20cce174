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
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "spap/instances.hpp"
#include "spap/ip_model.hpp"
#include "spap/solvers.hpp"

using namespace spap;

TEST_CASE("worked instance variable and row census, coalition rows included") {
  const IpModel m = build_model(testing::worked_instance(), true);
  CHECK(m.num_vars() == 23);  // 6 x, 3 alpha, 2 delta, 3 eta, 6 e, 3 v
  CHECK(m.num_x() == 6);
  CHECK(m.family_count(1) == 3);
  CHECK(m.family_count(2) == 3);
  CHECK(m.family_count(3) == 2);
  CHECK(m.family_count(4) == 3);
  CHECK(m.family_count(5) == 6);
  CHECK(m.family_count(6) == 2);
  CHECK(m.family_count(7) == 6);
  CHECK(m.family_count(8) == 3);
  CHECK(m.family_count(9) == 6);
  CHECK(m.family_count(10) == 4);
  CHECK(m.family_count(11) == 6);
}

TEST_CASE("coalition rows and variables drop without the flag") {
  const IpModel m = build_model(testing::worked_instance(), false);
  CHECK(m.num_vars() == 14);
  CHECK(m.family_count(10) == 0);
  CHECK(m.family_count(11) == 0);
  for (const IpVar& v : m.variables()) CHECK(v.kind == VarKind::Binary);
}

TEST_CASE("type-1a row of a lecturer's sole project has no lecturer-side term") {
  const IpModel m = build_model(testing::singleton_instance(), false);
  const IpRow* row = nullptr;
  for (const IpRow& r : m.rows()) {
    if (r.name == "bpa_1_1") row = &r;
  }
  REQUIRE(row != nullptr);
  // theta = 1 - x_1_1 and gamma = 0: the row reduces to alpha_1 - x_1_1 <= 1.
  CHECK(row->terms == std::vector<std::pair<int, int>>{{m.x_var(1, 1), -1}, {m.alpha_var(1), 1}});
  CHECK(row->rhs == 1);
  // The full model forces the assignment: optimum 1.
  CHECK(solve_exact(testing::singleton_instance()).size == 1);
}

TEST_CASE("census formulas hold on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generate(testing::small_params(9, seed));
    const IpModel m = build_model(inst, true);
    int x_count = 0;
    for (const Student& s : inst.students()) x_count += static_cast<int>(s.prefs.size());
    const int n1 = inst.num_students();
    CHECK(m.num_x() == x_count);
    CHECK(m.num_vars() == x_count + inst.num_projects() * 2 + inst.num_lecturers() +
                              n1 * (n1 - 1) + n1);
    CHECK(m.family_count(5) == x_count);
    CHECK(m.family_count(7) == x_count);
    CHECK(m.family_count(9) == x_count);
    CHECK(m.family_count(11) == n1 * (n1 - 1));
    CHECK(m.family_count(1) == n1);
    CHECK(m.family_count(4) == inst.num_projects());
    CHECK(m.family_count(6) == inst.num_lecturers());
    CHECK(m.family_count(8) == inst.num_projects());
  }
}

TEST_CASE("LP export carries the expected rows in deterministic order") {
  const IpModel m = build_model(testing::worked_instance(), false);
  const std::string text = export_lp(m);
  CHECK(text.find("Maximize") == 0);
  CHECK(text.find("x_1_3 + x_1_2 + x_1_1 + x_2_1 + x_2_2 + x_3_3") != std::string::npos);
  CHECK(text.find("x_1_3 + x_3_3 <= 1") != std::string::npos);  // capacity row of p3
  CHECK(text.find("Binary\n") != std::string::npos);
  CHECK(text.find("General") == std::string::npos);  // no integer variables
  CHECK(text.rfind("End\n") == text.size() - 4);
}

TEST_CASE("LP export is byte-identical across calls and carries bounds for v") {
  const Instance inst = testing::worked_instance();
  const std::string a = export_lp(build_model(inst, true));
  const std::string b = export_lp(build_model(inst, true));
  CHECK(a == b);
  CHECK(a.find("Bounds") != std::string::npos);
  CHECK(a.find(" 1 <= v_1 <= 3") != std::string::npos);
  CHECK(a.find("General") != std::string::npos);
}

TEST_CASE("extract_matching reads off the assignment variables") {
  const IpModel m = build_model(testing::worked_instance(), false);
  std::vector<double> values(m.num_vars(), 0.0);
  values[m.x_var(1, 2)] = 1.0;
  values[m.x_var(2, 1)] = 1.0;
  values[m.x_var(3, 3)] = 1.0;
  const Matching extracted = extract_matching(m, values);
  CHECK(extracted == testing::worked_m3());
  CHECK(extracted.size() == 3);

  CHECK(extract_matching(m, std::vector<double>(m.num_vars(), 0.0)).size() == 0);

  values[m.x_var(1, 3)] = 0.5;
  CHECK_THROWS_AS(extract_matching(m, values), NonIntegralValueError);
}

TEST_CASE("induced solutions of stable matchings satisfy every row") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = generate(testing::small_params(6, seed));
    const IpModel m = build_model(inst, true);
    for (const Matching& stable : all_stable(inst)) {
      const auto values = induced_solution(m, inst, stable);
      REQUIRE(values.has_value());
      CHECK(violated_rows(m, *values).empty());
    }
  }
}

TEST_CASE("induced solution of the coalition matching violates the ordering rows") {
  const Instance inst = testing::worked_instance();
  const IpModel m = build_model(inst, true);
  // m2 has a cyclic envy graph: no topological labels exist.
  CHECK(!induced_solution(m, inst, testing::worked_m2()).has_value());
  // Without the coalition rows the same matching is feasible.
  const IpModel no_coalition = build_model(inst, false);
  const auto values = induced_solution(no_coalition, inst, testing::worked_m2());
  REQUIRE(values.has_value());
  CHECK(violated_rows(no_coalition, *values).empty());
}

TEST_CASE("blocked matchings violate at least one row") {
  const Instance inst = testing::worked_instance();
  const IpModel m = build_model(inst, false);
  // s2 on p1 alone: s1/p3 (and others) block, so some row must fail.
  const auto values = induced_solution(m, inst, parse_matching_literal("2:1", 3));
  REQUIRE(values.has_value());
  CHECK(!violated_rows(m, *values).empty());
}
