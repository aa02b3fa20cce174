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

#include "spap/ip_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "spap/stability.hpp"

namespace spap {

namespace {

// Accumulates coefficients per variable; duplicate variables merge and zero
// coefficients drop (a project can sit in both the student-side and the
// lecturer-side sum of a blocking-pair row).
class RowBuilder {
 public:
  void add(int var, int coef) { coefs_[var] += coef; }

  IpRow finish(std::string name, int family, RowSense sense, int rhs) {
    IpRow row{std::move(name), family, {}, sense, rhs};
    for (const auto& [var, coef] : coefs_) {
      if (coef != 0) row.terms.emplace_back(var, coef);
    }
    coefs_.clear();
    return row;
  }

  bool empty_so_far() const {
    return std::all_of(coefs_.begin(), coefs_.end(),
                       [](const auto& t) { return t.second == 0; });
  }

  void clear() { coefs_.clear(); }

 private:
  std::map<int, int> coefs_;
};

std::string index_name(const char* stem, std::initializer_list<int> idx) {
  std::string name = stem;
  for (int v : idx) {
    name += '_';
    name += std::to_string(v);
  }
  return name;
}

}  // namespace

int IpModel::e_var(int i, int ip) const {
  const int offset = ip < i ? ip - 1 : ip - 2;
  return e_base_ + (i - 1) * (n1 - 1) + offset;
}

IpModel build_model(const Instance& inst, bool with_coalition) {
  IpModel m;
  m.n1 = inst.num_students();
  m.n2 = inst.num_projects();
  m.n3 = inst.num_lecturers();
  m.with_coalition = with_coalition;

  // Variables, in the order that also fixes LP output: x by student and list
  // position, then alpha, delta, eta, and (with coalition rows) e and v.
  m.x_index_.assign(static_cast<std::size_t>(m.n1) * m.n2, -1);
  for (const Student& s : inst.students()) {
    for (int j : s.prefs) {
      m.x_index_[(s.id - 1) * m.n2 + (j - 1)] = static_cast<int>(m.vars_.size());
      m.x_refs_.emplace_back(s.id, j);
      m.vars_.push_back({index_name("x", {s.id, j}), VarKind::Binary, 0, 1});
    }
  }
  m.alpha_base_ = static_cast<int>(m.vars_.size());
  for (int j = 1; j <= m.n2; ++j) {
    m.vars_.push_back({index_name("alpha", {j}), VarKind::Binary, 0, 1});
  }
  m.delta_base_ = static_cast<int>(m.vars_.size());
  for (int k = 1; k <= m.n3; ++k) {
    m.vars_.push_back({index_name("delta", {k}), VarKind::Binary, 0, 1});
  }
  // One eta per project, tied to its offering lecturer; eta for other
  // lecturers would be unreferenced free variables.
  m.eta_base_ = static_cast<int>(m.vars_.size());
  for (int j = 1; j <= m.n2; ++j) {
    m.vars_.push_back({index_name("eta", {j, inst.owner(j)}), VarKind::Binary, 0, 1});
  }
  if (with_coalition) {
    m.e_base_ = static_cast<int>(m.vars_.size());
    for (int i = 1; i <= m.n1; ++i) {
      for (int ip = 1; ip <= m.n1; ++ip) {
        if (ip == i) continue;
        m.vars_.push_back({index_name("e", {i, ip}), VarKind::Binary, 0, 1});
      }
    }
    m.v_base_ = static_cast<int>(m.vars_.size());
    for (int i = 1; i <= m.n1; ++i) {
      m.vars_.push_back({index_name("v", {i}), VarKind::Integer, 1, m.n1});
    }
  }

  for (int x = 0; x < m.num_x(); ++x) m.objective_.push_back(x);

  RowBuilder rb;
  auto push = [&](std::string name, int family, RowSense sense, int rhs) {
    m.rows_.push_back(rb.finish(std::move(name), family, sense, rhs));
    m.family_counts_[family] += 1;
  };

  // (1) each student takes at most one project.
  for (const Student& s : inst.students()) {
    for (int j : s.prefs) rb.add(m.x_var(s.id, j), 1);
    push(index_name("assign", {s.id}), 1, RowSense::Le, 1);
  }

  // (2) project capacities. A project no student finds acceptable has no
  // terms; the row is vacuous and skipped.
  for (const Project& p : inst.projects()) {
    for (int i = 1; i <= m.n1; ++i) {
      const int x = m.x_var(i, p.id);
      if (x >= 0) rb.add(x, 1);
    }
    if (rb.empty_so_far()) {
      rb.clear();
      continue;
    }
    push(index_name("pcap", {p.id}), 2, RowSense::Le, p.capacity);
  }

  // (3) lecturer capacities.
  for (const Lecturer& l : inst.lecturers()) {
    for (int j : l.prefs) {
      for (int i = 1; i <= m.n1; ++i) {
        const int x = m.x_var(i, j);
        if (x >= 0) rb.add(x, 1);
      }
    }
    if (rb.empty_so_far()) {
      rb.clear();
      continue;
    }
    push(index_name("lcap", {l.id}), 3, RowSense::Le, l.capacity);
  }

  // (4) alpha_j is forced to 1 when p_j is undersubscribed.
  for (const Project& p : inst.projects()) {
    rb.add(m.alpha_var(p.id), p.capacity);
    for (int i = 1; i <= m.n1; ++i) {
      const int x = m.x_var(i, p.id);
      if (x >= 0) rb.add(x, 1);
    }
    push(index_name("pund", {p.id}), 4, RowSense::Ge, p.capacity);
  }

  // (5) no type 1a blocking pair: theta + alpha + gamma <= 2, with
  // theta = 1 - sum over S_{i,j} and gamma the sum over T_{k,j}.
  for (const Student& s : inst.students()) {
    for (int pos = 0; pos < static_cast<int>(s.prefs.size()); ++pos) {
      const int j = s.prefs[pos];
      const int k = inst.owner(j);
      for (int q = 0; q <= pos; ++q) rb.add(m.x_var(s.id, s.prefs[q]), -1);
      const std::vector<int>& lp = inst.lecturer(k).prefs;
      const int lrank = inst.lecturer_rank(k, j);
      for (int q = lrank; q < static_cast<int>(lp.size()); ++q) {
        const int x = m.x_var(s.id, lp[q]);
        if (x >= 0) rb.add(x, 1);
      }
      rb.add(m.alpha_var(j), 1);
      push(index_name("bpa", {s.id, j}), 5, RowSense::Le, 1);
    }
  }

  // (6) delta_k is forced to 1 when l_k is undersubscribed.
  for (const Lecturer& l : inst.lecturers()) {
    rb.add(m.delta_var(l.id), l.capacity);
    for (int j : l.prefs) {
      for (int i = 1; i <= m.n1; ++i) {
        const int x = m.x_var(i, j);
        if (x >= 0) rb.add(x, 1);
      }
    }
    push(index_name("lund", {l.id}), 6, RowSense::Ge, l.capacity);
  }

  // (7) no type 1b blocking pair: theta + alpha + (1 - beta) + delta <= 3.
  for (const Student& s : inst.students()) {
    for (int pos = 0; pos < static_cast<int>(s.prefs.size()); ++pos) {
      const int j = s.prefs[pos];
      const int k = inst.owner(j);
      for (int q = 0; q <= pos; ++q) rb.add(m.x_var(s.id, s.prefs[q]), -1);
      for (int jp : inst.lecturer(k).prefs) {
        const int x = m.x_var(s.id, jp);
        if (x >= 0) rb.add(x, -1);
      }
      rb.add(m.alpha_var(j), 1);
      rb.add(m.delta_var(k), 1);
      push(index_name("bpb", {s.id, j}), 7, RowSense::Le, 1);
    }
  }

  // (8) eta_{j,k} is forced to 1 unless d_k students sit on projects l_k
  // likes as much as p_j.
  for (const Project& p : inst.projects()) {
    const int k = p.lecturer;
    const Lecturer& l = inst.lecturer(k);
    rb.add(m.eta_var(p.id), l.capacity);
    const int lrank = inst.lecturer_rank(k, p.id);
    for (int q = 0; q < lrank; ++q) {
      for (int i = 1; i <= m.n1; ++i) {
        const int x = m.x_var(i, l.prefs[q]);
        if (x >= 0) rb.add(x, 1);
      }
    }
    push(index_name("lfull", {p.id, k}), 8, RowSense::Ge, l.capacity);
  }

  // (9) no type 1c blocking pair: theta + alpha + (1 - beta) + eta <= 3.
  for (const Student& s : inst.students()) {
    for (int pos = 0; pos < static_cast<int>(s.prefs.size()); ++pos) {
      const int j = s.prefs[pos];
      const int k = inst.owner(j);
      for (int q = 0; q <= pos; ++q) rb.add(m.x_var(s.id, s.prefs[q]), -1);
      for (int jp : inst.lecturer(k).prefs) {
        const int x = m.x_var(s.id, jp);
        if (x >= 0) rb.add(x, -1);
      }
      rb.add(m.alpha_var(j), 1);
      rb.add(m.eta_var(j), 1);
      push(index_name("bpc", {s.id, j}), 9, RowSense::Le, 1);
    }
  }

  if (with_coalition) {
    // (10) e_{i,i'} picks up the envy arcs: rows exist where both assignment
    // variables exist, i.e. p_j in A_i and p_j' in A_i intersect A_i'.
    for (const Student& s : inst.students()) {
      const int i = s.id;
      for (int ip = 1; ip <= m.n1; ++ip) {
        if (ip == i) continue;
        for (int pos = 1; pos < static_cast<int>(s.prefs.size()); ++pos) {
          const int j = s.prefs[pos];
          for (int better = 0; better < pos; ++better) {
            const int jp = s.prefs[better];
            const int x_other = m.x_var(ip, jp);
            if (x_other < 0) continue;
            rb.add(m.x_var(i, j), 1);
            rb.add(x_other, 1);
            rb.add(m.e_var(i, ip), -1);
            push(index_name("envy", {i, ip, j, jp}), 10, RowSense::Le, 1);
          }
        }
      }
    }

    // (11) strict topological order, integer form: v_i + 1 <= v_i' + n1(1 - e).
    for (int i = 1; i <= m.n1; ++i) {
      for (int ip = 1; ip <= m.n1; ++ip) {
        if (ip == i) continue;
        rb.add(m.v_var(i), 1);
        rb.add(m.v_var(ip), -1);
        rb.add(m.e_var(i, ip), m.n1);
        push(index_name("topo", {i, ip}), 11, RowSense::Le, m.n1 - 1);
      }
    }
  }

  return m;
}

namespace {

void append_term(std::string& line, bool first, int coef, const std::string& name) {
  if (first) {
    if (coef < 0) line += "- ";
  } else {
    line += coef < 0 ? " - " : " + ";
  }
  const int mag = std::abs(coef);
  if (mag != 1) {
    line += std::to_string(mag);
    line += ' ';
  }
  line += name;
}

// Emit a (possibly long) expression, wrapping for LP readers with line limits.
void emit_wrapped(std::ostringstream& out, const std::string& head, const std::string& expr) {
  std::string line = head;
  std::istringstream tokens(expr);
  std::string token;
  while (tokens >> token) {
    if (line.size() + token.size() + 1 > 200) {
      out << line << '\n';
      line = "   ";
    }
    line += ' ';
    line += token;
  }
  out << line << '\n';
}

}  // namespace

std::string export_lp(const IpModel& model) {
  std::ostringstream out;
  const std::vector<IpVar>& vars = model.variables();

  std::string obj;
  bool first = true;
  for (int var : model.objective()) {
    append_term(obj, first, 1, vars[var].name);
    first = false;
  }
  out << "Maximize\n";
  emit_wrapped(out, " obj:", obj);

  out << "Subject To\n";
  for (const IpRow& row : model.rows()) {
    std::string expr;
    first = true;
    for (const auto& [var, coef] : row.terms) {
      append_term(expr, first, coef, vars[var].name);
      first = false;
    }
    expr += row.sense == RowSense::Le ? " <= " : " >= ";
    expr += std::to_string(row.rhs);
    emit_wrapped(out, " " + row.name + ":", expr);
  }

  bool any_integer = false;
  for (const IpVar& v : vars) {
    if (v.kind == VarKind::Integer) any_integer = true;
  }
  if (any_integer) {
    out << "Bounds\n";
    for (const IpVar& v : vars) {
      if (v.kind == VarKind::Integer) {
        out << ' ' << v.lower << " <= " << v.name << " <= " << v.upper << '\n';
      }
    }
  }
  out << "Binary\n";
  for (const IpVar& v : vars) {
    if (v.kind == VarKind::Binary) out << ' ' << v.name << '\n';
  }
  if (any_integer) {
    out << "General\n";
    for (const IpVar& v : vars) {
      if (v.kind == VarKind::Integer) out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

Matching extract_matching(const IpModel& model, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) < model.num_x()) {
    throw std::invalid_argument("value vector does not cover the assignment variables");
  }
  Matching m(model.n1);
  for (int x = 0; x < model.num_x(); ++x) {
    const double v = values[x];
    int bit = 0;
    if (std::abs(v) <= 1e-6) {
      bit = 0;
    } else if (std::abs(v - 1.0) <= 1e-6) {
      bit = 1;
    } else {
      throw NonIntegralValueError(model.variables()[x].name + " = " + std::to_string(v) +
                                  " is not integral");
    }
    if (bit == 1) {
      const auto [i, j] = model.x_pair(x);
      if (m.assigned(i)) {
        throw std::invalid_argument("solution assigns s" + std::to_string(i) + " twice");
      }
      m.assign(i, j);
    }
  }
  return m;
}

std::optional<std::vector<int>> induced_solution(const IpModel& model, const Instance& inst,
                                                 const Matching& m) {
  std::vector<int> values(model.num_vars(), 0);

  std::vector<int> project_load(model.n2 + 1, 0);
  std::vector<int> lecturer_load(model.n3 + 1, 0);
  for (const auto& [i, j] : m.pairs()) {
    const int x = model.x_var(i, j);
    if (x < 0) throw std::invalid_argument("matching contains a non-acceptable pair");
    values[x] = 1;
    project_load[j] += 1;
    lecturer_load[inst.owner(j)] += 1;
  }

  for (const Project& p : inst.projects()) {
    if (project_load[p.id] < p.capacity) values[model.alpha_var(p.id)] = 1;
  }
  for (const Lecturer& l : inst.lecturers()) {
    if (lecturer_load[l.id] < l.capacity) values[model.delta_var(l.id)] = 1;
  }
  // eta takes the value row (8) forces: 1 unless d_k students sit on projects
  // l_k likes as much as p_j.
  for (const Project& p : inst.projects()) {
    const Lecturer& l = inst.lecturer(p.lecturer);
    const int lrank = inst.lecturer_rank(l.id, p.id);
    int weakly_better = 0;
    for (int q = 0; q < lrank; ++q) weakly_better += project_load[l.prefs[q]];
    if (weakly_better < l.capacity) values[model.eta_var(p.id)] = 1;
  }

  if (model.with_coalition) {
    const EnvyGraph g = build_envy_graph(inst, m);
    for (const auto& [i, ip] : g.arcs()) values[model.e_var(i, ip)] = 1;

    // Topological labels via Kahn's algorithm, smallest id first.
    std::vector<int> indegree(model.n1 + 1, 0);
    for (const auto& [i, ip] : g.arcs()) indegree[ip] += 1;
    std::vector<bool> placed(model.n1 + 1, false);
    for (int label = 1; label <= model.n1; ++label) {
      int pick = 0;
      for (int i = 1; i <= model.n1; ++i) {
        if (!placed[i] && indegree[i] == 0) {
          pick = i;
          break;
        }
      }
      if (pick == 0) return std::nullopt;  // cyclic envy graph
      placed[pick] = true;
      values[model.v_var(pick)] = label;
      for (int v : g.adj[pick]) indegree[v] -= 1;
    }
  }
  return values;
}

std::vector<int> violated_rows(const IpModel& model, const std::vector<int>& values) {
  std::vector<int> violated;
  const std::vector<IpRow>& rows = model.rows();
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    long long lhs = 0;
    for (const auto& [var, coef] : rows[r].terms) {
      lhs += static_cast<long long>(coef) * values[var];
    }
    const bool ok = rows[r].sense == RowSense::Le ? lhs <= rows[r].rhs : lhs >= rows[r].rhs;
    if (!ok) violated.push_back(r);
  }
  return violated;
}

}  // namespace spap
