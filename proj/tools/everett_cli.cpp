// Copyright 2026 The Everett Simulator Authors
//
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
//
// Command line front end. Exit codes are a stable contract for scripting:
//   0 success, 2 config/validation/usage, 3 evaluation or null branch,
//   4 proposition syntax, 1 unexpected internal failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "everett/logic.hpp"
#include "everett/parallel.hpp"
#include "everett/transition.hpp"

namespace {

using namespace everett;

std::string fmt12(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string truth_text(const TruthValue& v) {
  if (v.is_point()) return "point " + fmt12(v.value());
  return "interval [" + fmt12(v.lo()) + ", " + fmt12(v.hi()) + "]";
}

Scenario load_from_path(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("file", "cannot read scenario file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

struct Options {
  std::string scenario_path;
  bool csv = false;
  unsigned threads = 0;  // 0 = all cores
  double at = 0.0;
  std::vector<double> times;
  std::string from, to, branch, prop;
  double t = 0.0, s = 0.0;
  double gamma = 0.5, dt = 0.25;
  std::size_t steps = 8;
};

void print_branches(const Scenario& sc, double t, bool csv) {
  BranchDecomposition d = branches_at(sc, t);
  std::vector<Index> order(static_cast<std::size_t>(d.size()));
  for (Index n = 0; n < d.size(); ++n) order[static_cast<std::size_t>(n)] = n;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return d.entry(a).weight > d.entry(b).weight;
  });

  std::size_t width = 6;
  for (const BranchEntry& e : d.entries()) width = std::max(width, e.label.size());
  if (csv) {
    std::cout << "branch,weight,real\n";
  } else {
    std::printf("%-*s  %-14s  %s\n", static_cast<int>(width), "branch", "weight", "real");
  }
  for (Index n : order) {
    const BranchEntry& e = d.entry(n);
    const bool real = e.weight > kBranchEpsilon;
    if (csv) {
      std::cout << csv_field(e.label) << ',' << fmt12(e.weight) << ','
                << (real ? "true" : "false") << '\n';
    } else {
      std::printf("%-*s  %s  %s\n", static_cast<int>(width), e.label.c_str(),
                  fmt12(e.weight).c_str(), real ? "yes" : "no");
    }
  }
}

void print_matrix(const Scenario& sc, double t, double s, bool csv) {
  TransitionMatrix tm = transition_matrix(sc, t, s);
  const auto& labels = tm.labels();
  std::size_t width = 10;
  for (const std::string& l : labels) width = std::max(width, l.size());
  const int w = static_cast<int>(std::max<std::size_t>(width, 14));

  if (csv) {
    std::cout << "to";
    for (const std::string& l : labels) std::cout << ',' << csv_field("from_" + l);
    std::cout << '\n';
  } else {
    std::printf("%-*s", w, "to\\from");
    for (const std::string& l : labels) std::printf("  %-14s", l.c_str());
    std::printf("\n");
  }
  for (Index m = 0; m < tm.size(); ++m) {
    if (csv) {
      std::cout << csv_field(labels[static_cast<std::size_t>(m)]);
    } else {
      std::printf("%-*s", w, labels[static_cast<std::size_t>(m)].c_str());
    }
    for (Index n = 0; n < tm.size(); ++n) {
      const auto& cell = tm.at(m, n);
      if (csv) {
        std::cout << ',' << (cell ? fmt12(*cell) : std::string());
      } else {
        std::printf("  %-14s", cell ? fmt12(*cell).c_str() : "-");
      }
    }
    std::cout << '\n';
  }
  // Diagnostic row; sums from multi-branch contexts need not reach 1.
  if (csv) {
    std::cout << "column_sum";
  } else {
    std::printf("%-*s", w, "column_sum");
  }
  for (Index n = 0; n < tm.size(); ++n) {
    const auto sum = tm.column_sum(n);
    if (csv) {
      std::cout << ',' << (sum ? fmt12(*sum) : std::string());
    } else {
      std::printf("  %-14s", sum ? fmt12(*sum).c_str() : "-");
    }
  }
  std::cout << '\n';
}

void print_profile(const Scenario& sc, const Options& opt) {
  Proposition p = parse_proposition(opt.prop);
  std::vector<TruthValue> profile = truth_profile(p, sc, opt.branch, opt.times);
  if (opt.csv) {
    std::cout << "t,kind,lo,hi\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      std::cout << fmt12(opt.times[i]) << ','
                << (profile[i].is_point() ? "point" : "interval") << ','
                << fmt12(profile[i].lo()) << ',' << fmt12(profile[i].hi()) << '\n';
    }
  } else {
    std::printf("%-16s  %s\n", "t", "truth");
    for (std::size_t i = 0; i < profile.size(); ++i) {
      std::printf("%-16s  %s\n", fmt12(opt.times[i]).c_str(),
                  truth_text(profile[i]).c_str());
    }
  }
}

void print_cat_demo(const Options& opt) {
  Scenario sc = build_cat_record_circuit({opt.gamma, opt.dt, opt.steps});
  if (opt.csv) {
    std::cout << "t,alive,died_total\n";
  } else {
    std::printf("%-16s  %-14s  %s\n", "t", "alive", "died_total");
  }
  for (std::size_t k = 0; k <= opt.steps; ++k) {
    const double t = static_cast<double>(k) * opt.dt;
    BranchDecomposition d = branches_at(sc, t);
    const double alive = *d.weight_of(kCatAliveLabel);
    double died = 0.0;
    for (const BranchEntry& e : d.entries()) {
      if (e.label != kCatAliveLabel) died += e.weight;
    }
    if (opt.csv) {
      std::cout << fmt12(t) << ',' << fmt12(alive) << ',' << fmt12(died) << '\n';
    } else {
      std::printf("%-16s  %s  %s\n", fmt12(t).c_str(), fmt12(alive).c_str(),
                  fmt12(died).c_str());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch decompositions, branch-relative transition probabilities, and"
               " probability-valued temporal logic over state-vector scenarios"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--csv", opt.csv, "Emit CSV instead of an aligned table");
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)");

  CLI::App* branches = app.add_subcommand("branches", "Branch weights at a time");
  branches->add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  branches->add_option("--at", opt.at, "Query time")->required();

  CLI::App* prob = app.add_subcommand("prob", "One branch-relative transition probability");
  prob->add_option("--scenario", opt.scenario_path)->required();
  prob->add_option("--from", opt.from, "Branch experienced at t")->required();
  prob->add_option("--t", opt.t, "Utterance time")->required();
  prob->add_option("--to", opt.to, "Branch asked about at s")->required();
  prob->add_option("--s", opt.s, "Future time (s >= t)")->required();

  CLI::App* matrix = app.add_subcommand("matrix", "All transition probabilities t -> s");
  matrix->add_option("--scenario", opt.scenario_path)->required();
  matrix->add_option("--t", opt.t)->required();
  matrix->add_option("--s", opt.s)->required();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a proposition in a context");
  eval->add_option("--scenario", opt.scenario_path)->required();
  eval->add_option("--prop", opt.prop, "Proposition text")->required();
  eval->add_option("--branch", opt.branch, "Context branch label")->required();
  eval->add_option("--t", opt.t, "Utterance time")->required();

  CLI::App* profile = app.add_subcommand("profile", "Evaluate at several utterance times");
  profile->add_option("--scenario", opt.scenario_path)->required();
  profile->add_option("--prop", opt.prop)->required();
  profile->add_option("--branch", opt.branch)->required();
  profile->add_option("--at", opt.times, "Utterance times (repeat or comma-separate)")
      ->required()
      ->delimiter(',');

  CLI::App* cat = app.add_subcommand("cat-demo", "Survival curve of the watched-decay circuit");
  cat->add_option("--gamma", opt.gamma, "Decay rate");
  cat->add_option("--dt", opt.dt, "Record bin width");
  cat->add_option("--steps", opt.steps, "Number of record bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_max_threads(opt.threads);
    if (branches->parsed()) {
      print_branches(load_from_path(opt.scenario_path), opt.at, opt.csv);
    } else if (prob->parsed()) {
      const double p = transition_probability(load_from_path(opt.scenario_path),
                                              {opt.from, opt.t, opt.to, opt.s});
      if (opt.csv) std::cout << "probability\n";
      std::cout << fmt12(p) << '\n';
    } else if (matrix->parsed()) {
      print_matrix(load_from_path(opt.scenario_path), opt.t, opt.s, opt.csv);
    } else if (eval->parsed()) {
      Scenario sc = load_from_path(opt.scenario_path);
      TruthValue v = evaluate(parse_proposition(opt.prop), sc, {opt.branch, opt.t});
      if (opt.csv) {
        std::cout << "kind,lo,hi\n"
                  << (v.is_point() ? "point" : "interval") << ',' << fmt12(v.lo()) << ','
                  << fmt12(v.hi()) << '\n';
      } else {
        std::cout << truth_text(v) << '\n';
      }
    } else if (profile->parsed()) {
      print_profile(load_from_path(opt.scenario_path), opt);
    } else if (cat->parsed()) {
      print_cat_demo(opt);
    }
    return 0;
  } catch (const SyntaxError& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const EvaluationError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
