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

#include "spap/model.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace spap {

namespace {

std::string project_name(int j) { return "p" + std::to_string(j); }
std::string student_name(int i) { return "s" + std::to_string(i); }
std::string lecturer_name(int k) { return "l" + std::to_string(k); }

void validate(const std::vector<Student>& students, const std::vector<Project>& projects,
              const std::vector<Lecturer>& lecturers) {
  const int n1 = static_cast<int>(students.size());
  const int n2 = static_cast<int>(projects.size());
  const int n3 = static_cast<int>(lecturers.size());
  if (n1 < 1 || n2 < 1 || n3 < 1) {
    throw ValidationError("instance needs at least one student, project and lecturer");
  }
  for (int t = 0; t < n1; ++t) {
    if (students[t].id != t + 1) throw ValidationError("student ids must be dense and 1-based");
  }
  for (int t = 0; t < n2; ++t) {
    if (projects[t].id != t + 1) throw ValidationError("project ids must be dense and 1-based");
  }
  for (int t = 0; t < n3; ++t) {
    if (lecturers[t].id != t + 1) throw ValidationError("lecturer ids must be dense and 1-based");
  }

  for (const Project& p : projects) {
    if (p.capacity < 1) {
      throw ValidationError(project_name(p.id) + " capacity must be positive");
    }
    if (p.lecturer < 1 || p.lecturer > n3) {
      throw ValidationError(project_name(p.id) + " references unknown lecturer l" +
                            std::to_string(p.lecturer));
    }
  }

  for (const Student& s : students) {
    if (s.prefs.empty()) {
      throw ValidationError(student_name(s.id) + " has an empty preference list");
    }
    std::vector<bool> seen(n2 + 1, false);
    for (int j : s.prefs) {
      if (j < 1 || j > n2) {
        throw ValidationError(student_name(s.id) + " ranks unknown project p" + std::to_string(j));
      }
      if (seen[j]) {
        throw ValidationError(student_name(s.id) + " ranks " + project_name(j) + " twice");
      }
      seen[j] = true;
    }
  }

  // The offered sets P_k must partition the projects, and each lecturer's
  // list must be exactly P_k.
  std::vector<int> listed_by(n2 + 1, 0);
  for (const Lecturer& l : lecturers) {
    if (l.capacity < 1) {
      throw ValidationError(lecturer_name(l.id) + " capacity must be positive");
    }
    if (l.prefs.empty()) {
      throw ValidationError(lecturer_name(l.id) + " offers no projects");
    }
    std::vector<bool> seen(n2 + 1, false);
    for (int j : l.prefs) {
      if (j < 1 || j > n2) {
        throw ValidationError(lecturer_name(l.id) + " ranks unknown project p" + std::to_string(j));
      }
      if (seen[j]) {
        throw ValidationError(lecturer_name(l.id) + " ranks " + project_name(j) + " twice");
      }
      seen[j] = true;
      if (listed_by[j] != 0) {
        throw ValidationError("project " + project_name(j) + " offered by two lecturers");
      }
      listed_by[j] = l.id;
    }
  }
  for (const Project& p : projects) {
    if (listed_by[p.id] == 0) {
      throw ValidationError("project " + project_name(p.id) +
                            " missing from its lecturer's preference list");
    }
    if (listed_by[p.id] != p.lecturer) {
      throw ValidationError("project " + project_name(p.id) + " declared under " +
                            lecturer_name(p.lecturer) + " but ranked by " +
                            lecturer_name(listed_by[p.id]));
    }
  }
}

}  // namespace

Instance::Instance(std::vector<Student> students, std::vector<Project> projects,
                   std::vector<Lecturer> lecturers)
    : students_(std::move(students)),
      projects_(std::move(projects)),
      lecturers_(std::move(lecturers)) {
  validate(students_, projects_, lecturers_);
}

const Student& Instance::student(int i) const {
  if (i < 1 || i > num_students()) throw std::out_of_range("student id out of range");
  return students_[i - 1];
}

const Project& Instance::project(int j) const {
  if (j < 1 || j > num_projects()) throw std::out_of_range("project id out of range");
  return projects_[j - 1];
}

const Lecturer& Instance::lecturer(int k) const {
  if (k < 1 || k > num_lecturers()) throw std::out_of_range("lecturer id out of range");
  return lecturers_[k - 1];
}

bool Instance::acceptable(int i, int j) const {
  const std::vector<int>& prefs = student(i).prefs;
  return std::find(prefs.begin(), prefs.end(), j) != prefs.end();
}

int Instance::student_rank(int i, int j) const {
  const std::vector<int>& prefs = student(i).prefs;
  for (int pos = 0; pos < static_cast<int>(prefs.size()); ++pos) {
    if (prefs[pos] == j) return pos + 1;
  }
  throw NotAcceptableError(project_name(j) + " is not acceptable to " + student_name(i));
}

int Instance::lecturer_rank(int k, int j) const {
  const std::vector<int>& prefs = lecturer(k).prefs;
  for (int pos = 0; pos < static_cast<int>(prefs.size()); ++pos) {
    if (prefs[pos] == j) return pos + 1;
  }
  throw NotOfferedError(project_name(j) + " is not offered by " + lecturer_name(k));
}

namespace {

struct Line {
  int number = 0;
  std::string text;
};

// Content lines with comments ('#' to end of line) and blanks removed.
std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::size_t hash = raw.find('#');
    std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({number, text});
  }
  return out;
}

int parse_int(std::istringstream& iss, int line, const std::string& what) {
  int value = 0;
  if (!(iss >> value)) throw ParseError(line, "expected " + what);
  return value;
}

void expect_end(std::istringstream& iss, int line) {
  std::string extra;
  if (iss >> extra) throw ParseError(line, "unexpected trailing token '" + extra + "'");
}

std::vector<int> parse_id_list(std::istringstream& iss, int line) {
  char colon = 0;
  if (!(iss >> colon) || colon != ':') throw ParseError(line, "expected ':' before id list");
  std::vector<int> ids;
  int id = 0;
  while (iss >> id) ids.push_back(id);
  if (!iss.eof()) throw ParseError(line, "malformed id in list");
  return ids;
}

}  // namespace

Instance parse_instance(std::istream& in) {
  const std::vector<Line> lines = content_lines(in);
  if (lines.empty()) throw ParseError(0, "empty instance file");

  std::size_t cursor = 0;
  auto next = [&](const char* section) -> const Line& {
    if (cursor >= lines.size()) {
      throw ParseError(lines.back().number, std::string("unexpected end of file, expected ") + section);
    }
    return lines[cursor++];
  };

  const Line& header = next("counts line");
  int n1 = 0, n2 = 0, n3 = 0;
  {
    std::istringstream iss(header.text);
    n1 = parse_int(iss, header.number, "student count");
    n2 = parse_int(iss, header.number, "project count");
    n3 = parse_int(iss, header.number, "lecturer count");
    expect_end(iss, header.number);
  }
  if (n1 < 1 || n2 < 1 || n3 < 1) throw ParseError(header.number, "counts must be positive");

  std::vector<Project> projects(n2);
  std::vector<bool> have_project(n2 + 1, false);
  for (int t = 0; t < n2; ++t) {
    const Line& line = next("project line");
    std::istringstream iss(line.text);
    char tag = 0;
    iss >> tag;
    if (tag != 'P') throw ParseError(line.number, "expected project line 'P <j> <cap> <lecturer>'");
    const int j = parse_int(iss, line.number, "project id");
    const int cap = parse_int(iss, line.number, "project capacity");
    const int k = parse_int(iss, line.number, "lecturer id");
    expect_end(iss, line.number);
    if (j < 1 || j > n2) throw ParseError(line.number, "project id out of range");
    if (have_project[j]) throw ParseError(line.number, "duplicate project line for p" + std::to_string(j));
    have_project[j] = true;
    projects[j - 1] = Project{j, cap, k};
  }

  std::vector<Lecturer> lecturers(n3);
  std::vector<bool> have_lecturer(n3 + 1, false);
  for (int t = 0; t < n3; ++t) {
    const Line& line = next("lecturer line");
    std::istringstream iss(line.text);
    char tag = 0;
    iss >> tag;
    if (tag != 'L') throw ParseError(line.number, "expected lecturer line 'L <k> <cap> : <prefs>'");
    const int k = parse_int(iss, line.number, "lecturer id");
    const int cap = parse_int(iss, line.number, "lecturer capacity");
    std::vector<int> prefs = parse_id_list(iss, line.number);
    if (k < 1 || k > n3) throw ParseError(line.number, "lecturer id out of range");
    if (have_lecturer[k]) throw ParseError(line.number, "duplicate lecturer line for l" + std::to_string(k));
    have_lecturer[k] = true;
    lecturers[k - 1] = Lecturer{k, cap, std::move(prefs)};
  }

  std::vector<Student> students(n1);
  std::vector<bool> have_student(n1 + 1, false);
  for (int t = 0; t < n1; ++t) {
    const Line& line = next("student line");
    std::istringstream iss(line.text);
    char tag = 0;
    iss >> tag;
    if (tag != 'S') throw ParseError(line.number, "expected student line 'S <i> : <prefs>'");
    const int i = parse_int(iss, line.number, "student id");
    std::vector<int> prefs = parse_id_list(iss, line.number);
    if (i < 1 || i > n1) throw ParseError(line.number, "student id out of range");
    if (have_student[i]) throw ParseError(line.number, "duplicate student line for s" + std::to_string(i));
    have_student[i] = true;
    students[i - 1] = Student{i, std::move(prefs)};
  }

  if (cursor != lines.size()) {
    throw ParseError(lines[cursor].number, "trailing content after instance definition");
  }
  return Instance(std::move(students), std::move(projects), std::move(lecturers));
}

Instance parse_instance_text(const std::string& text) {
  std::istringstream iss(text);
  return parse_instance(iss);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return parse_instance(in);
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.num_students() << ' ' << inst.num_projects() << ' ' << inst.num_lecturers() << '\n';
  for (const Project& p : inst.projects()) {
    out << "P " << p.id << ' ' << p.capacity << ' ' << p.lecturer << '\n';
  }
  for (const Lecturer& l : inst.lecturers()) {
    out << "L " << l.id << ' ' << l.capacity << " :";
    for (int j : l.prefs) out << ' ' << j;
    out << '\n';
  }
  for (const Student& s : inst.students()) {
    out << "S " << s.id << " :";
    for (int j : s.prefs) out << ' ' << j;
    out << '\n';
  }
  return out.str();
}

void Matching::assign(int s, int p) {
  if (s < 1 || s >= static_cast<int>(proj_.size())) {
    throw std::out_of_range("student id out of range");
  }
  if (p < 1) throw std::invalid_argument("project id must be positive");
  if (proj_[s] == 0) ++size_;
  proj_[s] = p;
}

void Matching::unassign(int s) {
  if (s < 1 || s >= static_cast<int>(proj_.size())) {
    throw std::out_of_range("student id out of range");
  }
  if (proj_[s] != 0) --size_;
  proj_[s] = 0;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s < static_cast<int>(proj_.size()); ++s) {
    if (proj_[s] != 0) out.emplace_back(s, proj_[s]);
  }
  return out;
}

std::vector<int> Matching::students_of_project(int j) const {
  std::vector<int> out;
  for (int s = 1; s < static_cast<int>(proj_.size()); ++s) {
    if (proj_[s] == j) out.push_back(s);
  }
  return out;
}

Matching parse_matching_literal(const std::string& text, int num_students) {
  Matching m(num_students);
  std::istringstream iss(text);
  std::string token;
  while (iss >> token) {
    const std::size_t colon = token.find(':');
    if (colon == std::string::npos) {
      throw ValidationError("matching pair '" + token + "' is not of the form i:j");
    }
    int s = 0, p = 0;
    try {
      s = std::stoi(token.substr(0, colon));
      p = std::stoi(token.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("matching pair '" + token + "' is not of the form i:j");
    }
    if (s < 1 || s > num_students) {
      throw ValidationError("matching names unknown student s" + std::to_string(s));
    }
    if (m.assigned(s)) {
      throw ValidationError("matching assigns s" + std::to_string(s) + " twice");
    }
    m.assign(s, p);
  }
  return m;
}

std::string format_matching(const Matching& m) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [s, p] : m.pairs()) {
    if (!first) out << ' ';
    out << s << ':' << p;
    first = false;
  }
  return out.str();
}

std::vector<int> PrefSets::S(int i, int j) const {
  const int rank = inst_->student_rank(i, j);
  const std::vector<int>& prefs = inst_->student(i).prefs;
  return std::vector<int>(prefs.begin(), prefs.begin() + rank);
}

std::vector<int> PrefSets::T(int k, int j) const {
  const int rank = inst_->lecturer_rank(k, j);
  const std::vector<int>& prefs = inst_->lecturer(k).prefs;
  return std::vector<int>(prefs.begin() + rank, prefs.end());
}

std::vector<int> PrefSets::D(int k, int j) const {
  const int rank = inst_->lecturer_rank(k, j);
  const std::vector<int>& prefs = inst_->lecturer(k).prefs;
  return std::vector<int>(prefs.begin(), prefs.begin() + rank);
}

}  // namespace spap
