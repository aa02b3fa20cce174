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

#ifndef SPAP_MODEL_HPP_
#define SPAP_MODEL_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spap {

// Malformed instance text. line is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Structurally well-formed input that violates an instance invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank query for a project missing from the student's acceptable set.
class NotAcceptableError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Rank query for a project the lecturer does not offer.
class NotOfferedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Student {
  int id = 0;
  std::vector<int> prefs;  // project ids, strict preference order, best first
  bool operator==(const Student&) const = default;
};

struct Project {
  int id = 0;
  int capacity = 1;
  int lecturer = 0;
  bool operator==(const Project&) const = default;
};

struct Lecturer {
  int id = 0;
  int capacity = 1;
  std::vector<int> prefs;  // exactly the projects this lecturer offers
  bool operator==(const Lecturer&) const = default;
};

// A validated, immutable SPA-P instance. Ids are dense and 1-based: students
// s1..s_n1, projects p1..p_n2, lecturers l1..l_n3. Every project belongs to
// exactly one lecturer and every lecturer ranks exactly the projects they
// offer; violations are rejected at construction.
class Instance {
 public:
  Instance(std::vector<Student> students, std::vector<Project> projects,
           std::vector<Lecturer> lecturers);

  int num_students() const { return static_cast<int>(students_.size()); }
  int num_projects() const { return static_cast<int>(projects_.size()); }
  int num_lecturers() const { return static_cast<int>(lecturers_.size()); }

  const Student& student(int i) const;
  const Project& project(int j) const;
  const Lecturer& lecturer(int k) const;

  const std::vector<Student>& students() const { return students_; }
  const std::vector<Project>& projects() const { return projects_; }
  const std::vector<Lecturer>& lecturers() const { return lecturers_; }

  int owner(int j) const { return project(j).lecturer; }
  bool acceptable(int i, int j) const;

  // 1-based rank of p_j on s_i's list: one plus the number of projects s_i
  // strictly prefers to p_j.
  int student_rank(int i, int j) const;
  int lecturer_rank(int k, int j) const;

  bool student_prefers(int i, int j1, int j2) const {
    return student_rank(i, j1) < student_rank(i, j2);
  }
  bool lecturer_prefers(int k, int j1, int j2) const {
    return lecturer_rank(k, j1) < lecturer_rank(k, j2);
  }

  bool operator==(const Instance& o) const {
    return students_ == o.students_ && projects_ == o.projects_ && lecturers_ == o.lecturers_;
  }

 private:
  std::vector<Student> students_;
  std::vector<Project> projects_;
  std::vector<Lecturer> lecturers_;
};

Instance parse_instance(std::istream& in);
Instance parse_instance_text(const std::string& text);
Instance load_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

// Partial map student id -> project id; 0 marks an unassigned student.
// Capacity feasibility is not enforced here (see stability::check_feasible).
class Matching {
 public:
  Matching() = default;
  explicit Matching(int num_students) : proj_(num_students + 1, 0) {}

  int num_students() const { return static_cast<int>(proj_.size()) - 1; }
  bool assigned(int s) const { return proj_.at(s) != 0; }
  int project_of(int s) const { return proj_.at(s); }

  void assign(int s, int p);
  void unassign(int s);

  int size() const { return size_; }

  // (student, project) pairs, student ascending.
  std::vector<std::pair<int, int>> pairs() const;
  std::vector<int> students_of_project(int j) const;

  // Full assignment vector indexed by student id (entry 0 unused); used for
  // deterministic lexicographic tie-breaking.
  const std::vector<int>& assignment_vector() const { return proj_; }

  bool operator==(const Matching&) const = default;

 private:
  std::vector<int> proj_;
  int size_ = 0;
};

// Parses "1:3 2:1" style pair lists as used by the check CLI subcommand.
Matching parse_matching_literal(const std::string& text, int num_students);
std::string format_matching(const Matching& m);

// Preference-derived index families. For an acceptable pair (s_i, p_j),
// S(i,j) is the set of projects s_i likes as much as p_j. For a project p_j
// offered by l_k, T(k,j) is the set of projects worse than p_j on l_k's list
// and D(k,j) the set l_k likes as much as p_j; D and T partition P_k.
class PrefSets {
 public:
  explicit PrefSets(const Instance& inst) : inst_(&inst) {}
  std::vector<int> S(int i, int j) const;
  std::vector<int> T(int k, int j) const;
  std::vector<int> D(int k, int j) const;

 private:
  const Instance* inst_;
};

inline PrefSets pref_sets(const Instance& inst) { return PrefSets(inst); }

}  // namespace spap

#endif  // SPAP_MODEL_HPP_
