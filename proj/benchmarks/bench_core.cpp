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

#include <random>

#include <benchmark/benchmark.h>

#include "everett/logic.hpp"
#include "everett/transition.hpp"

using namespace everett;

namespace {

std::mt19937_64 g_rng(12345);

Eigen::VectorXcd random_vector(Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(gauss(g_rng), gauss(g_rng));
  return v;
}

HermitianOperator random_hermitian(Index dim) {
  Eigen::MatrixXcd a(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      std::normal_distribution<double> gauss(0.0, 1.0);
      a(r, c) = Complex(gauss(g_rng), gauss(g_rng));
    }
  }
  return HermitianOperator(0.5 * (a + a.adjoint().eval()));
}

void BM_Evolve(benchmark::State& state) {
  const Index dim = state.range(0);
  HermitianOperator h = random_hermitian(dim);
  Eigen::VectorXcd v = random_vector(dim);
  v /= v.norm();
  StateVector psi({dim}, std::move(v));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(h, psi, 0.37));
  }
}
BENCHMARK(BM_Evolve)->Arg(8)->Arg(32)->Arg(128);

void BM_ApplySingleQubitGate(benchmark::State& state) {
  const int qubits = static_cast<int>(state.range(0));
  std::vector<Index> dims(static_cast<std::size_t>(qubits), 2);
  Eigen::VectorXcd v = random_vector(Index{1} << qubits);
  v /= v.norm();
  StateVector psi(dims, std::move(v));
  Eigen::MatrixXcd had(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  had << r, r, r, -r;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_unitary(had, psi, {qubits / 2}));
  }
}
BENCHMARK(BM_ApplySingleQubitGate)->Arg(8)->Arg(12)->Arg(16);

void BM_Decompose(benchmark::State& state) {
  const Index dim_s = state.range(0);
  Eigen::VectorXcd v = random_vector(dim_s * 16);
  v /= v.norm();
  StateVector psi({dim_s, 16}, std::move(v));
  ExperienceBasis basis = [&] {
    std::vector<std::string> labels;
    for (Index i = 0; i < dim_s; ++i) labels.push_back("b" + std::to_string(i));
    return ExperienceBasis::computational(std::move(labels));
  }();
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(psi, basis, {dim_s, 16}));
  }
}
BENCHMARK(BM_Decompose)->Arg(16)->Arg(256)->Arg(4096);

void BM_CatCircuitSweep(benchmark::State& state) {
  const std::size_t steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    Scenario sc = build_cat_record_circuit({0.5, 2.0 / static_cast<double>(steps), steps});
    benchmark::DoNotOptimize(branches_at(sc, 2.0));
  }
}
BENCHMARK(BM_CatCircuitSweep)->Arg(50)->Arg(200)->Arg(800);

void BM_TransitionProbability(benchmark::State& state) {
  Scenario sc = build_cat_record_circuit({0.5, 0.01, 200});
  for (auto _ : state) {
    benchmark::DoNotOptimize(transition_probability(sc, {"alive", 0.5, "alive", 2.0}));
  }
}
BENCHMARK(BM_TransitionProbability);

void BM_ParseEvaluate(benchmark::State& state) {
  Scenario sc = build_cat_record_circuit({0.5, 0.25, 8});
  const std::string text =
      "NOT X(died@3, 1.5) AND (X(alive, 2) OR X(died@5, 1.25)) AND X(alive, 0.25)";
  const Context ctx{"alive", 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(parse_proposition(text), sc, ctx));
  }
}
BENCHMARK(BM_ParseEvaluate);

}  // namespace

BENCHMARK_MAIN();
