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
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failed criteria. Pass the CLI binary
// path as argv[1] to enable the exit-code checks of criterion 9.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "everett/logic.hpp"
#include "everett/transition.hpp"
#include "testutil.hpp"

using namespace everett;

namespace {

struct Report {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> messages;

  void check(bool ok, const std::string& message) {
    ++checks;
    if (!ok) {
      ++failures;
      if (messages.size() < 4) messages.push_back(message);
    }
  }
};

std::string g_cli_path;

// --- criterion 1: survival curve of the record circuit ----------------------

void criterion_survival(Report& r) {
  const double gamma = 0.5;
  const double dt = 0.01;
  Scenario sc = build_cat_record_circuit({gamma, dt, 200});
  for (double t : {0.5, 1.0, 2.0}) {
    const double weight = *branches_at(sc, t).weight_of(kCatAliveLabel);
    const double expected = std::exp(-2.0 * gamma * t);
    r.check(std::abs(weight - expected) <= 1e-9,
            "alive weight at t=" + std::to_string(t) + " is " + std::to_string(weight));
  }
}

// --- criterion 2: Born recovery from single-branch contexts -----------------

void criterion_born(Report& r) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> time(0.2, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    double s = 0.0;
    std::unique_ptr<Scenario> sc;
    if (rep % 4 == 3) {
      const Index k = 2 + static_cast<Index>(rng() % 7);  // total k^2 <= 64
      Eigen::VectorXcd alpha = testutil::random_vector(k, rng);
      alpha /= alpha.norm();
      std::vector<Complex> amps(alpha.data(), alpha.data() + k);
      sc = std::make_unique<Scenario>(build_measurement(amps, testutil::letter_labels(k)));
      s = 1.0;
    } else {
      const Index dim_s = 2 + static_cast<Index>(rng() % 7);
      const Index dim_e = 1 + static_cast<Index>(rng() % (64 / dim_s));
      auto pair = testutil::random_hamiltonian_scenario(dim_s, dim_e, rng,
                                                        /*random_basis=*/rep % 2 == 1,
                                                        /*single_branch_initial=*/true);
      sc = std::make_unique<Scenario>(std::move(pair.scenario));
      s = time(rng);
    }
    const std::string& from = sc->basis().label(0);
    const BranchDecomposition d = branches_at(*sc, s);
    double sum = 0.0;
    for (Index m = 0; m < sc->basis().dim(); ++m) {
      if (d.entry(m).weight <= kBranchEpsilon) continue;
      const double p = transition_probability(*sc, {from, 0.0, sc->basis().label(m), s});
      r.check(std::abs(p - d.entry(m).weight) <= 1e-9,
              "probability differs from the branch weight by " +
                  std::to_string(std::abs(p - d.entry(m).weight)));
      sum += p;
    }
    r.check(std::abs(sum - 1.0) <= 1e-9, "probabilities sum to " + std::to_string(sum));
  }
}

// --- criterion 3: Kronecker delta at coincident times ------------------------

void criterion_delta(Report& r) {
  std::mt19937_64 rng(3407);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const bool circuit = rep % 3 == 2;
    auto pair = circuit
                    ? testutil::random_circuit_scenario(2 + rep % 3, 2 + rep % 2, 4, rng)
                    : testutil::random_hamiltonian_scenario(2 + rep % 4, 1 + rep % 4, rng,
                                                            rep % 2 == 1);
    const Scenario& sc = pair.scenario;
    const double t = circuit ? 0.5 * static_cast<double>(rep % 5) : time(rng);
    const BranchDecomposition d = branches_at(sc, t);
    for (Index n = 0; n < sc.basis().dim(); ++n) {
      if (d.entry(n).weight <= kBranchEpsilon) continue;
      for (Index m = 0; m < sc.basis().dim(); ++m) {
        if (d.entry(m).weight <= kBranchEpsilon) continue;
        const double p =
            transition_probability(sc, {sc.basis().label(n), t, sc.basis().label(m), t});
        r.check(std::abs(p - (m == n ? 1.0 : 0.0)) <= 1e-12,
                "delta violated by " + std::to_string(std::abs(p - (m == n ? 1.0 : 0.0))));
      }
    }
  }
}

// --- criterion 4: engine vs direct dense evaluation -------------------------

void criterion_oracle(Report& r) {
  std::mt19937_64 rng(4096);
  std::uniform_real_distribution<double> time(0.0, 1.5);
  int checked = 0;
  while (checked < 100) {
    const bool circuit = checked % 3 == 2;
    testutil::ScenarioPair pair =
        circuit ? testutil::random_circuit_scenario(2 + checked % 3, 2, 4, rng)
                : testutil::random_hamiltonian_scenario(2 + checked % 3,
                                                        1 + checked % 4, rng,
                                                        checked % 2 == 1);
    const Scenario& sc = pair.scenario;
    double t = time(rng);
    double s = t + time(rng);
    if (circuit) {
      t = 0.5 * std::floor(t / 0.5);
      s = std::min(2.0, 0.5 * std::ceil(s / 0.5));
    }
    const BranchDecomposition d_t = branches_at(sc, t);
    const BranchDecomposition d_s = branches_at(sc, s);
    const Index n = static_cast<Index>(rng() % static_cast<std::uint64_t>(sc.basis().dim()));
    const Index m = static_cast<Index>(rng() % static_cast<std::uint64_t>(sc.basis().dim()));
    if (d_t.entry(n).weight <= 1e-9 || d_s.entry(m).weight <= 1e-9) continue;

    const double engine =
        transition_probability(sc, {sc.basis().label(n), t, sc.basis().label(m), s});
    const double oracle = testutil::oracle_transition(pair.raw, n, t, m, s);
    r.check(std::abs(engine - oracle) <= 1e-10,
            "engine " + std::to_string(engine) + " vs oracle " + std::to_string(oracle));
    ++checked;
  }
}

// --- criterion 5: evolution properties ---------------------------------------

void criterion_evolution(Report& r) {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> time(-2.0, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const Index dim = 2 + static_cast<Index>(rng() % 31);  // <= 32
    HermitianOperator h = testutil::random_hermitian(dim, rng);
    StateVector psi = testutil::random_state({dim}, rng);
    const double a = time(rng);
    const double b = time(rng);

    StateVector one = evolve(h, psi, a);
    r.check(std::abs(one.norm() - psi.norm()) <= 1e-10, "unitarity drift");

    StateVector two = evolve(h, one, b);
    StateVector direct = evolve(h, psi, a + b);
    r.check((two.amps() - direct.amps()).cwiseAbs().maxCoeff() <= 1e-9,
            "composition drift");

    StateVector back = evolve(h, one, -a);
    r.check((back.amps() - psi.amps()).cwiseAbs().maxCoeff() <= 1e-9, "inversion drift");
  }
}

// --- criterion 6: logic property suite ---------------------------------------

struct LogicWorld {
  Scenario sc;
  std::vector<double> grid;
};

Proposition random_prop(const LogicWorld& w, const Context& ctx, std::mt19937_64& rng,
                        int depth) {
  const int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 4);
  switch (pick) {
    case 1:
      return Proposition::negation(random_prop(w, ctx, rng, depth - 1));
    case 2:
      return Proposition::conjunction(random_prop(w, ctx, rng, depth - 1),
                                      random_prop(w, ctx, rng, depth - 1));
    case 3:
      return Proposition::disjunction(random_prop(w, ctx, rng, depth - 1),
                                      random_prop(w, ctx, rng, depth - 1));
    default: {
      const double s = w.grid[rng() % w.grid.size()];
      std::string label;
      if (s > ctx.t) {
        // Future atoms must point at branches that exist at s.
        const std::size_t live_bins = static_cast<std::size_t>(std::llround(s / 0.25));
        const std::size_t pick_label = rng() % (live_bins + 1);
        label = pick_label == 0 ? std::string(kCatAliveLabel) : cat_died_label(pick_label);
      } else {
        label = w.sc.basis().label(
            static_cast<Index>(rng() % static_cast<std::uint64_t>(w.sc.basis().dim())));
      }
      return Proposition::atom(label, s);
    }
  }
}

void criterion_logic(Report& r) {
  std::mt19937_64 rng(6007);
  LogicWorld w{build_cat_record_circuit({0.7, 0.25, 6}),
               {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5}};

  for (int rep = 0; rep < 1000; ++rep) {
    // A live context: alive anywhere, died@k from k*dt on.
    const std::size_t bin = rng() % 4;  // 0 = alive
    const double earliest = 0.25 * static_cast<double>(bin);
    std::vector<double> candidates;
    for (double t : w.grid) {
      if (t >= earliest) candidates.push_back(t);
    }
    const Context ctx{bin == 0 ? std::string(kCatAliveLabel) : cat_died_label(bin),
                      candidates[rng() % candidates.size()]};

    Proposition p = random_prop(w, ctx, rng, 3);
    Proposition q = random_prop(w, ctx, rng, 2);

    const TruthValue vp = evaluate(p, w.sc, ctx);
    r.check(0.0 <= vp.lo() && vp.lo() <= vp.hi() && vp.hi() <= 1.0, "range/ordering violated");

    const TruthValue nn = evaluate(Proposition::negation(Proposition::negation(p)), w.sc, ctx);
    r.check(nn == vp, "double negation not exact");

    const TruthValue lhs =
        evaluate(Proposition::negation(Proposition::conjunction(p, q)), w.sc, ctx);
    const TruthValue rhs = evaluate(
        Proposition::disjunction(Proposition::negation(p), Proposition::negation(q)), w.sc, ctx);
    r.check(lhs == rhs, "De Morgan (and) not exact");

    const TruthValue lhs_or =
        evaluate(Proposition::negation(Proposition::disjunction(p, q)), w.sc, ctx);
    const TruthValue rhs_or = evaluate(
        Proposition::conjunction(Proposition::negation(p), Proposition::negation(q)), w.sc, ctx);
    r.check(lhs_or == rhs_or, "De Morgan (or) not exact");
  }

  // Exclusive same-time pairs: exact points sit inside the generic bounds.
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t k = 1 + rng() % 6;
    const double s = 0.25 * static_cast<double>(k);
    const Context ctx{kCatAliveLabel, 0.0};
    Proposition a = Proposition::atom(kCatAliveLabel, s);
    Proposition b = Proposition::atom(cat_died_label(k), s);
    const TruthValue va = evaluate(a, w.sc, ctx);
    const TruthValue vb = evaluate(b, w.sc, ctx);
    const TruthValue exact_and = evaluate(Proposition::conjunction(a, b), w.sc, ctx);
    const TruthValue exact_or = evaluate(Proposition::disjunction(a, b), w.sc, ctx);
    r.check(exact_and.is_point() && exact_or.is_point(), "exclusive pair not exact");
    r.check(truth_and(va, vb).contains(exact_and), "And point escapes the generic bounds");
    r.check(truth_or(va, vb).contains(exact_or), "Or point escapes the generic bounds");
  }

  // Monotonicity of the interval combinators under operand widening.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    double a = unit(rng), b = unit(rng);
    if (a > b) std::swap(a, b);
    double c = unit(rng), d = unit(rng);
    if (c > d) std::swap(c, d);
    const TruthValue outer = TruthValue::interval(a, b);
    const TruthValue inner =
        TruthValue::interval(a + (b - a) * 0.25, b - (b - a) * 0.25);
    const TruthValue other = TruthValue::interval(c, d);
    r.check(truth_and(outer, other).contains(truth_and(inner, other)), "And not monotone");
    r.check(truth_or(outer, other).contains(truth_or(inner, other)), "Or not monotone");
    r.check(truth_not(outer).contains(truth_not(inner)), "Not not monotone");
  }
}

// --- criterion 7: the shape of past and future truth values ------------------

void criterion_past_shape(Report& r) {
  std::mt19937_64 rng(7919);
  Scenario cat = build_cat_record_circuit({0.5, 0.25, 8});
  const auto grid_time = [&](std::size_t k) { return 0.25 * static_cast<double>(k); };

  int sampled = 0;
  while (sampled < 200) {
    const std::size_t bin = rng() % 5;
    const std::size_t t_idx = bin + rng() % (9 - bin);
    const Context ctx{bin == 0 ? std::string(kCatAliveLabel) : cat_died_label(bin),
                      grid_time(t_idx)};
    const std::size_t s_idx = rng() % 9;
    const double s = grid_time(s_idx);

    std::string label;
    if (s > ctx.t) {
      const std::size_t live = rng() % (s_idx + 1);
      label = live == 0 ? std::string(kCatAliveLabel) : cat_died_label(live);
    } else {
      label = cat.basis().label(static_cast<Index>(rng() % 9));
    }
    const TruthValue v = evaluate(Proposition::atom(label, s), cat, ctx);
    if (s <= ctx.t) {
      r.check(v.lo() == v.hi() && (v.lo() == 0.0 || v.lo() == 1.0),
              "past atom not a two-valued point");
    } else {
      r.check(v.is_point() && 0.0 <= v.lo() && v.hi() <= 1.0,
              "future atom not a point probability");
    }
    ++sampled;
  }

  // Without records the past is the undetermined interval.
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  Scenario bare("bare", StateVector::basis_state({2}, 0), Factorization{2, 1},
                ExperienceBasis::computational({"up", "down"}),
                HamiltonianDynamics{HermitianOperator(std::move(m))});
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double t = time(rng);
    const double s = t * 0.9;
    const Context ctx{std::cos(t) * std::cos(t) > 0.5 ? "up" : "down", t};
    const TruthValue v = evaluate(Proposition::atom(rep % 2 == 0 ? "up" : "down", s), bare, ctx);
    r.check(v.lo() == 0.0 && v.hi() == 1.0, "record-free past atom not undetermined");
  }
}

// --- criterion 8: revival suppression comes from records ---------------------

void criterion_revival(Report& r) {
  Scenario cat = build_cat_record_circuit({0.5, 0.2, 10});
  for (std::size_t k = 1; k <= 10; ++k) {
    const double t_first = 0.2 * static_cast<double>(k);
    for (double t : {t_first, std::min(2.0, t_first + 0.4)}) {
      for (double s = t + 0.2; s <= 2.0 + 1e-9; s += 0.6) {
        const double p = revival_probability(cat, {cat_died_label(k), t, kCatAliveLabel, s});
        r.check(std::abs(p) <= 1e-12, "revival out of a recorded branch: " + std::to_string(p));
      }
    }
  }

  Eigen::MatrixXcd m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  Scenario bare("bare", StateVector::basis_state({2}, 0), Factorization{2, 1},
                ExperienceBasis::computational({"up", "down"}),
                HamiltonianDynamics{HermitianOperator(std::move(m))});
  const double p = revival_probability(
      bare, {"down", std::numbers::pi / 2, "up", std::numbers::pi});
  r.check(std::abs(p - 1.0) <= 1e-9,
          "environment-free revival is " + std::to_string(p) + ", expected 1");
}

// --- criterion 9: parser round trip, diagnostics, exit codes -----------------

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = "\"" + g_cli_path + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
  const int rc = pclose(pipe);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

void criterion_parser(Report& r) {
  std::mt19937_64 rng(9001);
  const std::vector<std::string> labels{"alive", "died@1", "sea battle", "x_1", "OR"};
  const std::vector<double> times{0.0, 0.25, 1.0, -3.5, 1e-9, 123.456, 2.0};
  std::function<Proposition(int)> gen = [&](int depth) -> Proposition {
    const int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 4);
    switch (pick) {
      case 1:
        return Proposition::negation(gen(depth - 1));
      case 2:
        return Proposition::conjunction(gen(depth - 1), gen(depth - 1));
      case 3:
        return Proposition::disjunction(gen(depth - 1), gen(depth - 1));
      default:
        return Proposition::atom(labels[rng() % labels.size()], times[rng() % times.size()]);
    }
  };
  for (int rep = 0; rep < 500; ++rep) {
    Proposition p = gen(5);
    const std::string text = to_string(p);
    bool ok = false;
    try {
      ok = parse_proposition(text) == p;
    } catch (const SyntaxError&) {
    }
    r.check(ok, "round trip failed for: " + text);
  }

  // Three diagnostic classes, each with a position.
  const auto positioned = [&](const std::string& text) {
    try {
      parse_proposition(text);
      return false;
    } catch (const SyntaxError& e) {
      return e.column() >= 1;
    }
  };
  r.check(positioned("X(a,1) OR"), "unexpected end of input not positioned");
  r.check(positioned(""), "empty input not positioned");
  r.check(positioned("X(a,1) ? X(b,2)"), "bad character not positioned");

  // Documented exit statuses through the CLI.
  if (g_cli_path.empty()) {
    r.check(false, "no CLI path given; exit-code checks need argv[1]");
    return;
  }
  const auto dir =
      std::filesystem::temp_directory_path() / ("everett_acc_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const std::string& body) {
    const auto path = dir / name;
    std::ofstream out(path);
    out << body;
    return path.string();
  };
  const std::string good = write("sigma_x.json", R"({
    "name": "sigma-x", "dims": [2], "observer_dims": [2],
    "initial": [[1, 0], [0, 0]],
    "dynamics": {"hamiltonian": [[0, 0], [1, 0], [1, 0], [0, 0]]},
    "basis": {"labels": ["up", "down"]}
  })");
  const std::string bad = write("bad.json", "{ not json at all");

  CliResult ok_run = run_cli("prob --scenario " + good + " --from up --t 0 --to up --s 0");
  r.check(ok_run.status == 0 && ok_run.out == "1.000000000000\n",
          "success path: status " + std::to_string(ok_run.status) + ", out " + ok_run.out);

  CliResult config_err = run_cli("branches --scenario " + bad + " --at 0");
  r.check(config_err.status == 2, "config error status " + std::to_string(config_err.status));

  CliResult eval_err = run_cli("prob --scenario " + good + " --from down --t 0 --to up --s 1");
  r.check(eval_err.status == 3 && eval_err.out.find("null branch") != std::string::npos,
          "null-branch status " + std::to_string(eval_err.status));

  CliResult syntax_err =
      run_cli("eval --scenario " + good + " --prop \"X(up,1) OR\" --branch up --t 0");
  r.check(syntax_err.status == 4 && syntax_err.out.find("column") != std::string::npos,
          "syntax status " + std::to_string(syntax_err.status) + ", out " + syntax_err.out);
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<void(Report&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];

  const std::vector<Criterion> criteria{
      {1, "record-circuit survival curve equals exp(-2*gamma*t)", 5.0, criterion_survival},
      {2, "Born weights recovered from single-branch contexts", 10.0, criterion_born},
      {3, "transition at s = t is the Kronecker delta", 0.0, criterion_delta},
      {4, "engine matches the direct dense evaluation", 0.0, criterion_oracle},
      {5, "evolution is unitary, composes, and inverts", 0.0, criterion_evolution},
      {6, "logic property suite over random propositions", 0.0, criterion_logic},
      {7, "past atoms are two-valued with records, undetermined without", 0.0,
       criterion_past_shape},
      {8, "revivals: zero out of recorded branches, full without environment", 0.0,
       criterion_revival},
      {9, "parser round trip, positioned diagnostics, exit codes", 0.0, criterion_parser},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Report report;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(report);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (c.time_limit_s > 0.0 && elapsed > c.time_limit_s) {
      report.check(false, "runtime " + std::to_string(elapsed) + " s exceeds " +
                              std::to_string(c.time_limit_s) + " s");
    }
    const bool pass = error.empty() && report.failures == 0;
    if (!pass) ++failed;
    std::printf("%s  criterion %d: %s (%ld checks, %.2f s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), report.checks, elapsed);
    if (!error.empty()) std::printf("      unexpected exception: %s\n", error.c_str());
    for (const std::string& m : report.messages) {
      std::printf("      %s\n", m.c_str());
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
