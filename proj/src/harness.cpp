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

#include "spap/harness.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "spap/approx.hpp"
#include "spap/ip_model.hpp"
#include "spap/stability.hpp"

namespace spap {

namespace {

using Clock = std::chrono::steady_clock;

std::string pref_len_label(const Instance& inst) {
  int lo = inst.num_projects() + 1, hi = 0;
  for (const Student& s : inst.students()) {
    lo = std::min(lo, static_cast<int>(s.prefs.size()));
    hi = std::max(hi, static_cast<int>(s.prefs.size()));
  }
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

std::string format_double(double v, int precision) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << v;
  return out.str();
}

void require_stable(const Instance& inst, const Matching& m, const std::string& label) {
  if (!is_stable(inst, m).stable()) {
    throw std::logic_error("harness produced an unstable matching for algorithm " + label);
  }
}

struct RowMeta {
  int experiment = 0;
  std::uint64_t seed = 0;
  std::string mode;
};

ReportRow base_row(const RowMeta& meta, const Instance& inst) {
  ReportRow row;
  row.experiment = meta.experiment;
  row.n1 = inst.num_students();
  row.n2 = inst.num_projects();
  row.n3 = inst.num_lecturers();
  row.pref_len = pref_len_label(inst);
  row.seed = meta.seed;
  row.mode = meta.mode;
  return row;
}

// Exact plus the four approximation variants. B/C and D/E share the first
// run seed so best-of-R dominance is structural rather than statistical, and
// every matching is verified stable before a row is emitted.
std::vector<ReportRow> run_five(const RowMeta& meta, const Instance& inst, int runs,
                                SolveBudget budget) {
  std::vector<ReportRow> rows;

  ReportRow a = base_row(meta, inst);
  a.algo = "A";
  std::optional<int> opt;
  try {
    const OptimalResult exact = solve_exact(inst, SolveMode::NoCoalitionRotate, budget);
    require_stable(inst, exact.matching, "A");
    a.size = exact.size;
    a.nodes = exact.nodes;
    a.time_ms = exact.time_ms;
    opt = exact.size;
    a.opt = opt;
    a.ratio = 1.0;
  } catch (const BudgetExceededError& e) {
    const OptimalResult& incumbent = e.incumbent();
    require_stable(inst, incumbent.matching, "A");
    a.size = incumbent.size;
    a.nodes = incumbent.nodes;
    a.time_ms = incumbent.time_ms;
    a.budget_limited = true;
  }
  rows.push_back(a);

  const struct {
    const char* label;
    ApproxAlgo algo;
    int runs;
  } variants[] = {
      {"B", ApproxAlgo::ThreeHalves, runs},
      {"C", ApproxAlgo::ThreeHalves, 1},
      {"D", ApproxAlgo::Two, runs},
      {"E", ApproxAlgo::Two, 1},
  };
  for (const auto& variant : variants) {
    const auto start = Clock::now();
    const Matching m = best_of_runs(inst, {variant.algo, variant.runs, meta.seed});
    const double elapsed =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    require_stable(inst, m, variant.label);
    ReportRow row = base_row(meta, inst);
    row.algo = variant.label;
    row.size = m.size();
    row.time_ms = elapsed;
    row.opt = opt;
    if (opt) row.ratio = static_cast<double>(m.size()) / *opt;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

const char* ExperimentReport::csv_header() {
  return "experiment,n1,n2,n3,pref_len,seed,mode,algo,size,opt,ratio,time_ms,nodes";
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const ReportRow& row : rows) {
    out << row.experiment << ',' << row.n1 << ',' << row.n2 << ',' << row.n3 << ','
        << row.pref_len << ',' << row.seed << ','
        << row.mode << (row.budget_limited ? "!budget" : "") << ',' << row.algo << ','
        << row.size << ',';
    if (row.opt) out << *row.opt;
    out << ',';
    if (row.ratio) out << format_double(*row.ratio, 6);
    out << ',' << format_double(row.time_ms, 3) << ',';
    if (row.nodes) out << *row.nodes;
    out << '\n';
  }
  return out.str();
}

void ExperimentReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << to_csv();
}

bool ExperimentReport::any_budget_limited() const {
  for (const ReportRow& row : rows) {
    if (row.budget_limited) return true;
  }
  return false;
}

ExperimentReport run_experiment_0(const std::vector<int>& sizes, int trials, SolveBudget budget,
                                  std::uint64_t seed) {
  ExperimentReport report;
  std::uint64_t counter = 0;
  for (int n1 : sizes) {
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t inst_seed = seed + counter++;
      const Instance inst = generate({n1, 0.5, 0.2, 1.1, PrefLen::range(2, 5), inst_seed});
      for (SolveMode mode : {SolveMode::WithCoalition, SolveMode::NoCoalitionRotate}) {
        ReportRow row = base_row({0, inst_seed, to_string(mode)}, inst);
        row.algo = "A";
        try {
          const OptimalResult result = solve_exact(inst, mode, budget);
          require_stable(inst, result.matching, "A");
          row.size = result.size;
          row.opt = result.size;
          row.ratio = 1.0;
          row.nodes = result.nodes;
          row.time_ms = result.time_ms;
        } catch (const BudgetExceededError& e) {
          row.size = e.incumbent().size;
          row.nodes = e.incumbent().nodes;
          row.time_ms = e.incumbent().time_ms;
          row.budget_limited = true;
        }
        report.rows.push_back(row);
      }
    }
  }
  return report;
}

ExperimentReport run_experiment_1(const std::vector<int>& sizes, int trials, int runs,
                                  SolveBudget budget, std::uint64_t seed) {
  ExperimentReport report;
  std::uint64_t counter = 0;
  for (int n1 : sizes) {
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t inst_seed = seed + counter++;
      const Instance inst = generate({n1, 0.5, 0.2, 1.1, PrefLen::range(2, 5), inst_seed});
      const std::vector<ReportRow> rows = run_five({1, inst_seed, "-"}, inst, runs, budget);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  return report;
}

ExperimentReport run_experiment_2(int n1, const std::vector<int>& lengths, int trials, int runs,
                                  SolveBudget budget, std::uint64_t seed) {
  ExperimentReport report;
  std::uint64_t counter = 0;
  for (int x : lengths) {
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t inst_seed = seed + counter++;
      const Instance inst = generate({n1, 0.5, 0.2, 1.1, PrefLen::exact(x), inst_seed});
      const std::vector<ReportRow> rows = run_five({2, inst_seed, "-"}, inst, runs, budget);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  return report;
}

ExperimentReport run_experiment_3(const std::vector<std::pair<std::string, Instance>>& instances,
                                  const std::vector<PopularityMode>& modes, int runs,
                                  SolveBudget budget, std::uint64_t seed) {
  ExperimentReport report;
  std::uint64_t counter = 0;
  for (const auto& [label, inst] : instances) {
    for (PopularityMode mode : modes) {
      const std::uint64_t derive_seed = seed + counter++;
      const Instance derived = derive_lecturer_prefs(inst, mode, derive_seed);
      const std::vector<ReportRow> rows =
          run_five({3, derive_seed, to_string(mode)}, derived, runs, budget);
      report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
  }
  return report;
}

std::vector<Table2Shape> table2_shapes() {
  return {
      {"2014", 55, 149, 38, 6},
      {"2015", 76, 197, 46, 6},
      {"2016", 92, 214, 44, 6},
      {"2017", 90, 289, 59, 4},
  };
}

Instance table2_standin(const Table2Shape& shape, std::uint64_t seed) {
  GenParams params;
  params.n1 = shape.n1;
  params.project_ratio = static_cast<double>(shape.n2) / shape.n1;
  params.lecturer_ratio = static_cast<double>(shape.n3) / shape.n1;
  // Total capacity equal to the project count gives every project capacity 1.
  params.capacity_ratio = static_cast<double>(shape.n2) / shape.n1;
  params.pref_len = PrefLen::exact(shape.pref_len);
  params.seed = seed;
  return generate(params);
}

std::string summarize_experiment(const ExperimentReport& report) {
  struct Agg {
    int count = 0;
    long long size_sum = 0;
    double ratio_sum = 0.0;
    int ratio_count = 0;
    double time_sum = 0.0;
  };
  std::map<std::tuple<int, int, std::string, std::string, std::string>, Agg> groups;
  for (const ReportRow& row : report.rows) {
    Agg& agg = groups[{row.experiment, row.n1, row.pref_len, row.mode, row.algo}];
    agg.count += 1;
    agg.size_sum += row.size;
    if (row.ratio) {
      agg.ratio_sum += *row.ratio;
      agg.ratio_count += 1;
    }
    agg.time_sum += row.time_ms;
  }
  std::ostringstream out;
  for (const auto& [key, agg] : groups) {
    const auto& [experiment, n1, pref_len, mode, algo] = key;
    out << "exp" << experiment << " n1=" << n1 << " pref=" << pref_len << " mode=" << mode
        << " algo=" << algo << " trials=" << agg.count
        << " mean_size=" << format_double(static_cast<double>(agg.size_sum) / agg.count, 3);
    if (agg.ratio_count > 0) {
      out << " mean_ratio=" << format_double(agg.ratio_sum / agg.ratio_count, 4);
    }
    out << " mean_time_ms=" << format_double(agg.time_sum / agg.count, 3) << '\n';
  }
  return out.str();
}

std::string format_mode_grid(const ExperimentReport& report) {
  // Rows: one instance (identified by dimensions and list length); columns:
  // popularity mode x algorithm.
  std::vector<std::string> modes;
  std::vector<std::tuple<int, int, int, std::string>> keys;
  std::map<std::tuple<int, int, int, std::string>, std::map<std::string, std::map<std::string, std::string>>>
      cells;
  for (const ReportRow& row : report.rows) {
    const auto key = std::make_tuple(row.n1, row.n2, row.n3, row.pref_len);
    std::string mode = row.mode;
    const std::size_t bang = mode.find('!');
    const bool flagged = bang != std::string::npos;
    if (flagged) mode = mode.substr(0, bang);
    if (std::find(modes.begin(), modes.end(), mode) == modes.end()) modes.push_back(mode);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    cells[key][mode][row.algo] = std::to_string(row.size) + (flagged ? "*" : "");
  }
  const char* algos[] = {"A", "B", "C", "D", "E"};
  std::ostringstream out;
  out << std::left << std::setw(22) << "instance";
  for (const std::string& mode : modes) {
    out << std::left << std::setw(30) << mode;
  }
  out << '\n';
  out << std::left << std::setw(22) << "n1 n2 n3 l";
  for (std::size_t m = 0; m < modes.size(); ++m) {
    std::ostringstream head;
    for (const char* algo : algos) head << std::setw(5) << algo << ' ';
    out << std::left << std::setw(30) << head.str();
  }
  out << '\n';
  for (const auto& key : keys) {
    const auto& [n1, n2, n3, pref] = key;
    std::ostringstream label;
    label << n1 << ' ' << n2 << ' ' << n3 << ' ' << pref;
    out << std::left << std::setw(22) << label.str();
    for (const std::string& mode : modes) {
      std::ostringstream group;
      for (const char* algo : algos) {
        const auto& by_algo = cells[key][mode];
        const auto it = by_algo.find(algo);
        group << std::setw(5) << (it == by_algo.end() ? "-" : it->second) << ' ';
      }
      out << std::left << std::setw(30) << group.str();
    }
    out << '\n';
  }
  return out.str();
}

namespace {

struct ExpOptions {
  std::vector<int> sizes;
  std::vector<int> lengths;
  int n1 = 20;
  int trials = 10;
  int runs = 100;
  std::uint64_t seed = 0;
  long long node_budget = 100'000'000;
  double time_budget_ms = std::numeric_limits<double>::infinity();
  std::string out_path;
  std::vector<std::string> files;
  std::vector<std::string> mode_names = {"random", "ascending", "descending"};

  SolveBudget budget() const { return {node_budget, time_budget_ms}; }
};

int emit_report(const ExperimentReport& report, const ExpOptions& opt, std::ostream& out,
                bool grid) {
  if (opt.out_path.empty()) {
    out << report.to_csv();
  } else {
    report.write_csv(opt.out_path);
    out << summarize_experiment(report);
    if (grid) out << format_mode_grid(report);
  }
  return report.any_budget_limited() ? 2 : 0;
}

}  // namespace

int cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SPA-P toolkit: exact and approximate maximum stable matching solvers"};
  app.require_subcommand(1);

  GenParams gen_params;
  int pref_min = 2, pref_max = 5, pref_exact = 0;
  std::string out_path, instance_path, matching_literal;
  std::string mode_name = "no-coalition";
  std::string algo_name = "three-halves";
  bool use_oracle = false, with_coalition = false;
  int runs = 1;
  std::uint64_t run_seed = 0;
  long long node_budget = 100'000'000;
  double time_budget_ms = std::numeric_limits<double>::infinity();
  ExpOptions exp;

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--n1", gen_params.n1, "number of students")->required();
  gen->add_option("--seed", gen_params.seed, "generator seed");
  gen->add_option("--project-ratio", gen_params.project_ratio, "projects per student");
  gen->add_option("--lecturer-ratio", gen_params.lecturer_ratio, "lecturers per student");
  gen->add_option("--capacity-ratio", gen_params.capacity_ratio, "total capacity per student");
  gen->add_option("--pref-min", pref_min, "minimum preference list length");
  gen->add_option("--pref-max", pref_max, "maximum preference list length");
  gen->add_option("--pref-exact", pref_exact, "exact preference list length");
  gen->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* check = app.add_subcommand("check", "verify feasibility and stability of a matching");
  check->add_option("instance", instance_path, "instance file")->required();
  check->add_option("--matching", matching_literal, "space-separated i:j pairs")->required();

  CLI::App* solve = app.add_subcommand("solve", "find a maximum stable matching");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve->add_flag("--exact", "use the branch-and-bound solver (default)");
  solve->add_flag("--oracle", use_oracle, "use the exhaustive enumeration oracle");
  solve->add_option("--mode", mode_name, "with-coalition or no-coalition (default)");
  solve->add_option("--node-budget", node_budget, "search node limit");
  solve->add_option("--time-budget-ms", time_budget_ms, "wall time limit");

  CLI::App* approx = app.add_subcommand("approx", "run an approximation algorithm");
  approx->add_option("instance", instance_path, "instance file")->required();
  approx->add_option("--algo", algo_name, "two or three-halves");
  approx->add_option("--runs", runs, "best-of runs");
  approx->add_option("--seed", run_seed, "base seed");

  CLI::App* export_lp_cmd = app.add_subcommand("export-lp", "write the integer program in LP format");
  export_lp_cmd->add_option("instance", instance_path, "instance file")->required();
  export_lp_cmd->add_flag("--with-coalition", with_coalition, "include the coalition rows");
  export_lp_cmd->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* exp0 = app.add_subcommand("exp0", "exact solver timing, both coalition modes");
  exp0->add_option("--sizes", exp.sizes, "instance sizes")->delimiter(',')->required();
  exp0->add_option("--trials", exp.trials, "instances per size");
  exp0->add_option("--seed", exp.seed, "base seed");
  exp0->add_option("--node-budget", exp.node_budget, "search node limit");
  exp0->add_option("--time-budget-ms", exp.time_budget_ms, "wall time limit per solve");
  exp0->add_option("--out", exp.out_path, "CSV output path");

  CLI::App* exp1 = app.add_subcommand("exp1", "five-algorithm comparison across sizes");
  exp1->add_option("--sizes", exp.sizes, "instance sizes")->delimiter(',')->required();
  exp1->add_option("--trials", exp.trials, "instances per size");
  exp1->add_option("--runs", exp.runs, "best-of runs for B and D");
  exp1->add_option("--seed", exp.seed, "base seed");
  exp1->add_option("--node-budget", exp.node_budget, "search node limit");
  exp1->add_option("--time-budget-ms", exp.time_budget_ms, "wall time limit per solve");
  exp1->add_option("--out", exp.out_path, "CSV output path");

  CLI::App* exp2 = app.add_subcommand("exp2", "five-algorithm comparison across list lengths");
  exp2->add_option("--n1", exp.n1, "number of students");
  exp2->add_option("--lengths", exp.lengths, "exact list lengths")->delimiter(',')->required();
  exp2->add_option("--trials", exp.trials, "instances per length");
  exp2->add_option("--runs", exp.runs, "best-of runs for B and D");
  exp2->add_option("--seed", exp.seed, "base seed");
  exp2->add_option("--node-budget", exp.node_budget, "search node limit");
  exp2->add_option("--time-budget-ms", exp.time_budget_ms, "wall time limit per solve");
  exp2->add_option("--out", exp.out_path, "CSV output path");

  CLI::App* exp3 = app.add_subcommand("exp3", "popularity-mode grid on real-shaped instances");
  exp3->add_option("--files", exp.files, "instance files (default: generated stand-ins)")
      ->delimiter(',');
  exp3->add_option("--modes", exp.mode_names, "popularity modes")->delimiter(',');
  exp3->add_option("--runs", exp.runs, "best-of runs for B and D");
  exp3->add_option("--seed", exp.seed, "base seed");
  exp3->add_option("--node-budget", exp.node_budget, "search node limit");
  exp3->add_option("--time-budget-ms", exp.time_budget_ms, "wall time limit per solve");
  exp3->add_option("--out", exp.out_path, "CSV output path");

  std::vector<const char*> argv;
  argv.push_back("spap");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream dummy;
    const int code = app.exit(e, out, err);
    (void)dummy;
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(gen)) {
      if (pref_exact > 0) {
        gen_params.pref_len = PrefLen::exact(pref_exact);
      } else {
        gen_params.pref_len = PrefLen::range(pref_min, pref_max);
      }
      const std::string text = serialize_instance(generate(gen_params));
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
        file << text;
      }
      return 0;
    }

    if (app.got_subcommand(check)) {
      const Instance inst = load_instance(instance_path);
      const Matching m = parse_matching_literal(matching_literal, inst.num_students());
      const StabilityVerdict verdict = is_stable(inst, m);
      switch (verdict.kind) {
        case StabilityVerdict::Kind::Infeasible:
          for (const std::string& v : verdict.violations) out << "INFEASIBLE " << v << '\n';
          break;
        case StabilityVerdict::Kind::BlockingPairs:
          for (const BlockingPair& b : verdict.blocking) {
            out << "BLOCK s" << b.student << " p" << b.project << " type=" << to_string(b.type)
                << '\n';
          }
          break;
        case StabilityVerdict::Kind::Coalition: {
          out << "COALITION ";
          for (std::size_t t = 0; t < verdict.coalition.size(); ++t) {
            if (t > 0) out << ',';
            out << 's' << verdict.coalition[t];
          }
          out << '\n';
          break;
        }
        case StabilityVerdict::Kind::Stable:
          out << "STABLE\n";
          break;
      }
      return 0;
    }

    if (app.got_subcommand(solve)) {
      const Instance inst = load_instance(instance_path);
      try {
        OptimalResult result;
        if (use_oracle) {
          result = max_stable_oracle(inst, EnumBudget{node_budget});
        } else {
          result = solve_exact(inst, solve_mode_from_string(mode_name),
                               SolveBudget{node_budget, time_budget_ms});
        }
        out << "size=" << result.size << '\n';
        out << "matching: " << format_matching(result.matching) << '\n';
        out << "nodes=" << result.nodes << " time_ms=" << format_double(result.time_ms, 3)
            << " mode=" << to_string(result.mode) << '\n';
        return 0;
      } catch (const BudgetExceededError& e) {
        const OptimalResult& incumbent = e.incumbent();
        out << "budget exhausted; incumbent is a lower bound\n";
        out << "size=" << incumbent.size << '\n';
        out << "matching: " << format_matching(incumbent.matching) << '\n';
        return 2;
      }
    }

    if (app.got_subcommand(approx)) {
      const Instance inst = load_instance(instance_path);
      const ApproxConfig cfg{approx_algo_from_string(algo_name), runs, run_seed};
      const Matching m = best_of_runs(inst, cfg);
      out << "size=" << m.size() << '\n';
      out << "matching: " << format_matching(m) << '\n';
      return 0;
    }

    if (app.got_subcommand(export_lp_cmd)) {
      const Instance inst = load_instance(instance_path);
      const std::string text = export_lp(build_model(inst, with_coalition));
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
        file << text;
      }
      return 0;
    }

    if (app.got_subcommand(exp0)) {
      return emit_report(run_experiment_0(exp.sizes, exp.trials, exp.budget(), exp.seed), exp, out,
                         false);
    }
    if (app.got_subcommand(exp1)) {
      return emit_report(
          run_experiment_1(exp.sizes, exp.trials, exp.runs, exp.budget(), exp.seed), exp, out,
          false);
    }
    if (app.got_subcommand(exp2)) {
      return emit_report(
          run_experiment_2(exp.n1, exp.lengths, exp.trials, exp.runs, exp.budget(), exp.seed),
          exp, out, false);
    }
    if (app.got_subcommand(exp3)) {
      std::vector<std::pair<std::string, Instance>> instances;
      if (exp.files.empty()) {
        std::uint64_t standin_seed = exp.seed;
        for (const Table2Shape& shape : table2_shapes()) {
          instances.emplace_back(shape.label, table2_standin(shape, standin_seed++));
        }
      } else {
        for (const std::string& path : exp.files) {
          instances.emplace_back(path, load_instance(path));
        }
      }
      std::vector<PopularityMode> modes;
      for (const std::string& name : exp.mode_names) {
        modes.push_back(popularity_mode_from_string(name));
      }
      return emit_report(run_experiment_3(instances, modes, exp.runs, exp.budget(), exp.seed),
                         exp, out, true);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace spap
