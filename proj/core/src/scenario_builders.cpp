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

#include <cmath>
#include <memory>
#include <unordered_map>
#include <utility>

#include "everett/scenario.hpp"

namespace everett {

std::string cat_died_label(std::size_t bin) {
  return "died@" + std::to_string(bin);
}

namespace {

void check_cat_inputs(double gamma, double t) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("gamma", "decay rate must be positive and finite");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw ValidationError("time", "time must be nonnegative and finite");
  }
}

}  // namespace

StateVector build_cat_plain(double gamma, double t) {
  check_cat_inputs(gamma, t);
  const double alive = std::exp(-gamma * t);
  const double dead = std::sqrt(1.0 - alive * alive);
  Eigen::VectorXcd amps(2);
  amps << Complex(alive, 0.0), Complex(dead, 0.0);
  return StateVector({2}, std::move(amps));
}

StateVector build_cat_observed(double gamma, double t) {
  check_cat_inputs(gamma, t);
  const double alive = std::exp(-gamma * t);
  const double dead = std::sqrt(1.0 - alive * alive);
  // Observer factor first: |happy>|alive> and |sad>|dead>.
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = Complex(alive, 0.0);
  amps(3) = Complex(dead, 0.0);
  return StateVector({2, 2}, std::move(amps));
}

Scenario build_cat_record_circuit(const CatParams& p) {
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) {
    throw ValidationError("gamma", "decay rate must be positive and finite");
  }
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) {
    throw ValidationError("step-size", "bin width must be positive and finite");
  }
  if (p.gamma * p.dt >= 1.0) {
    throw ValidationError("gamma-dt", "gamma*dt must be below 1 for a well-conditioned step");
  }
  if (p.steps < 1) {
    throw ValidationError("steps", "at least one record bin is required");
  }
  const Index dim_s = static_cast<Index>(p.steps) + 1;
  const Index total = 2 * dim_s;
  if (total > dimension_cap()) {
    throw CapacityError("record register of " + std::to_string(p.steps) +
                        " bins exceeds the dimension cap");
  }

  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(dim_s));
  labels.emplace_back(kCatAliveLabel);
  for (std::size_t k = 1; k <= p.steps; ++k) {
    labels.push_back(cat_died_label(k));
  }

  const std::vector<Index> dims{dim_s, 2};
  StateVector initial = StateVector::basis_state(dims, 0);  // |nothing seen>|alive>

  const double c = std::exp(-p.gamma * p.dt);
  const double s = std::sqrt(1.0 - c * c);
  CircuitDynamics circuit;
  circuit.dt = p.dt;
  circuit.steps.reserve(p.steps);
  for (std::size_t k = 1; k <= p.steps; ++k) {
    // |0, alive> -> c|0, alive> + s|k, dead>; branches written earlier are
    // left alone, so the survival amplitude compounds exactly.
    circuit.steps.push_back(PlaneRotation{0, static_cast<Index>(2 * k + 1), c, s});
  }

  // Memory: a branch that saw the decay in bin k had seen the cat alive at
  // every grid time before k*dt and remembers the decay from then on.
  auto bin_of = std::make_shared<std::unordered_map<std::string, std::size_t>>();
  (*bin_of)[kCatAliveLabel] = 0;
  for (std::size_t k = 1; k <= p.steps; ++k) {
    (*bin_of)[cat_died_label(k)] = k;
  }
  RecordMap records = [bin_of](const std::string& branch,
                               std::size_t grid_index) -> std::optional<std::string> {
    auto it = bin_of->find(branch);
    if (it == bin_of->end()) return std::nullopt;
    if (it->second == 0 || grid_index < it->second) return std::string(kCatAliveLabel);
    return branch;
  };

  return Scenario("cat-record", std::move(initial), Factorization{dim_s, 2},
                  ExperienceBasis::computational(std::move(labels)), std::move(circuit),
                  std::move(records));
}

Scenario build_measurement(const std::vector<Complex>& amplitudes,
                           const std::vector<std::string>& labels) {
  const std::size_t n = amplitudes.size();
  if (n < 2) {
    throw ValidationError("outcomes", "a measurement needs at least two outcomes");
  }
  if (labels.size() != n) {
    throw ValidationError("labels-distinct", "one label per outcome is required");
  }
  double norm2 = 0.0;
  for (const Complex& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw ValidationError("finiteness", "amplitudes must be finite");
    }
    norm2 += std::norm(a);
  }
  if (std::abs(norm2 - 1.0) > kNumericTol) {
    throw ValidationError("normalization",
                          "outcome amplitudes have squared norm " + std::to_string(norm2));
  }
  const Index k = static_cast<Index>(n);
  if (k > dimension_cap() / k) {
    throw CapacityError("measurement scenario exceeds the dimension cap");
  }

  // One step maps |0>|0> to sum_k alpha_k |k>|k>; any unitary completion of
  // that first column will do.
  Eigen::VectorXcd column = Eigen::VectorXcd::Zero(k * k);
  for (Index i = 0; i < k; ++i) {
    column(i * k + i) = amplitudes[static_cast<std::size_t>(i)];
  }
  column /= column.norm();

  CircuitDynamics circuit;
  circuit.dt = 1.0;
  circuit.steps.push_back(DenseGate{unitary_completion(column), {0, 1}});

  const std::vector<Index> dims{k, k};
  return Scenario("measurement", StateVector::basis_state(dims, 0), Factorization{k, k},
                  ExperienceBasis::computational(labels), std::move(circuit));
}

}  // namespace everett
