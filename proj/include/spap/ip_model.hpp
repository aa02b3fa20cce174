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

#ifndef SPAP_IP_MODEL_HPP_
#define SPAP_IP_MODEL_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spap/model.hpp"

namespace spap {

class NonIntegralValueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VarKind { Binary, Integer };
enum class RowSense { Le, Ge };

struct IpVar {
  std::string name;
  VarKind kind = VarKind::Binary;
  int lower = 0;
  int upper = 1;
};

struct IpRow {
  std::string name;
  int family = 0;  // constraint family 1..11
  std::vector<std::pair<int, int>> terms;  // (variable id, coefficient), variable ascending
  RowSense sense = RowSense::Le;
  int rhs = 0;
};

// The 0-1 integer program for maximum stable matching: one assignment
// indicator per acceptable pair, project/lecturer undersubscription and
// lecturer-full indicators, blocking-pair exclusion rows for types 1a/1b/1c,
// and (optionally) envy-arc indicators with integer topological labels that
// exclude coalitions. The matching maximizer is the number of assigned
// students.
class IpModel {
 public:
  int n1 = 0, n2 = 0, n3 = 0;
  bool with_coalition = false;

  const std::vector<IpVar>& variables() const { return vars_; }
  const std::vector<IpRow>& rows() const { return rows_; }

  // Objective: maximize the sum of the listed variables (all coefficient 1).
  const std::vector<int>& objective() const { return objective_; }

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_x() const { return static_cast<int>(x_refs_.size()); }

  // Variable lookups; x_var returns -1 for non-acceptable pairs.
  int x_var(int i, int j) const { return x_index_[(i - 1) * n2 + (j - 1)]; }
  int alpha_var(int j) const { return alpha_base_ + j - 1; }
  int delta_var(int k) const { return delta_base_ + k - 1; }
  int eta_var(int j) const { return eta_base_ + j - 1; }
  int e_var(int i, int ip) const;  // ordered pair, i != ip
  int v_var(int i) const { return v_base_ + i - 1; }

  // (student, project) behind the x variable with the given id (< num_x()).
  std::pair<int, int> x_pair(int x_id) const { return x_refs_[x_id]; }

  int family_count(int family) const { return family_counts_[family]; }

 private:
  friend IpModel build_model(const Instance& inst, bool with_coalition);

  std::vector<IpVar> vars_;
  std::vector<IpRow> rows_;
  std::vector<int> objective_;
  std::vector<int> x_index_;                  // dense n1*n2 lookup, -1 absent
  std::vector<std::pair<int, int>> x_refs_;
  int alpha_base_ = 0, delta_base_ = 0, eta_base_ = 0, e_base_ = 0, v_base_ = 0;
  int family_counts_[12] = {0};
};

// Builds the model for inst. Rows follow the family order 1..11 with
// deterministic index order inside each family; x variables are registered
// by student then list position, which also fixes the objective order.
IpModel build_model(const Instance& inst, bool with_coalition);

// CPLEX-style LP text: Maximize / Subject To / Bounds / Binary / General /
// End. Byte-identical output for identical models.
std::string export_lp(const IpModel& model);

// Matching from a 0/1 assignment of the x variables. values is indexed by
// variable id; entries for non-x variables are ignored. Throws
// NonIntegralValueError when an x value is not within 1e-6 of 0 or 1.
Matching extract_matching(const IpModel& model, const std::vector<double>& values);

// The variable assignment induced by a matching: x from the pairs, the
// indicator variables at the values the big-M rows force, envy arcs from the
// matching, and topological labels for the v variables. Returns nullopt when
// the model carries coalition rows and the envy graph is cyclic (no label
// assignment exists).
std::optional<std::vector<int>> induced_solution(const IpModel& model, const Instance& inst,
                                                 const Matching& m);

// Indices of rows the assignment violates (empty means feasible).
std::vector<int> violated_rows(const IpModel& model, const std::vector<int>& values);

}  // namespace spap

#endif  // SPAP_IP_MODEL_HPP_
