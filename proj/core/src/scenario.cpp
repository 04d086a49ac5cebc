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

#include "everett/scenario.hpp"

#include <cmath>
#include <utility>

namespace everett {

namespace {

constexpr double kGridSnapTol = 1e-9;

void validate_step(const CircuitStep& step, const std::vector<Index>& dims, Index total) {
  if (const auto* gate = std::get_if<DenseGate>(&step)) {
    Index gate_dim = 1;
    for (int t : gate->targets) {
      if (t < 0 || t >= static_cast<int>(dims.size())) {
        throw ValidationError("dimension", "gate target index out of range");
      }
      gate_dim *= dims[static_cast<std::size_t>(t)];
    }
    if (gate->targets.empty() || gate->unitary.rows() != gate_dim ||
        gate->unitary.cols() != gate_dim) {
      throw ValidationError("dimension", "gate matrix does not match its target factors");
    }
    if (!is_unitary(gate->unitary)) {
      throw ValidationError("unitarity", "circuit step is not unitary within 1e-10");
    }
  } else {
    const auto& rot = std::get<PlaneRotation>(step);
    if (rot.i < 0 || rot.i >= total || rot.j < 0 || rot.j >= total || rot.i == rot.j) {
      throw ValidationError("dimension", "plane rotation indices out of range");
    }
    const double r2 = rot.cos_theta * rot.cos_theta + rot.sin_theta * rot.sin_theta;
    if (!std::isfinite(r2) || std::abs(r2 - 1.0) > kStructuralTol) {
      throw ValidationError("unitarity", "plane rotation is not norm-preserving");
    }
  }
}

StateVector apply_step(const CircuitStep& step, const StateVector& psi) {
  if (const auto* gate = std::get_if<DenseGate>(&step)) {
    return apply_unitary(gate->unitary, psi, gate->targets);
  }
  const auto& rot = std::get<PlaneRotation>(step);
  Eigen::VectorXcd amps = psi.amps();
  const Complex a = amps(rot.i);
  const Complex b = amps(rot.j);
  amps(rot.i) = rot.cos_theta * a - rot.sin_theta * b;
  amps(rot.j) = rot.sin_theta * a + rot.cos_theta * b;
  return StateVector(psi.dims(), std::move(amps));
}

}  // namespace

Scenario::Scenario(std::string name, StateVector initial, Factorization factorization,
                   ExperienceBasis basis, Dynamics dynamics, RecordMap records)
    : name_(std::move(name)),
      initial_(std::move(initial)),
      factorization_(factorization),
      basis_(std::move(basis)),
      dynamics_(std::move(dynamics)),
      records_(std::move(records)) {
  const Index total = initial_.total_dim();
  if (!initial_.is_normalized()) {
    throw ValidationError("normalization",
                          "initial state norm is " + std::to_string(initial_.norm()));
  }
  factorization_.validate(total);
  if (basis_.dim() != factorization_.dim_s) {
    throw ValidationError("dimension", "basis size does not match the observer factor");
  }
  if (const auto* h = std::get_if<HamiltonianDynamics>(&dynamics_)) {
    if (h->hamiltonian.dim() != total) {
      throw ValidationError("dimension", "Hamiltonian does not match the total dimension");
    }
  } else {
    const auto& circuit = std::get<CircuitDynamics>(dynamics_);
    if (!(circuit.dt > 0.0) || !std::isfinite(circuit.dt)) {
      throw ValidationError("step-size", "circuit step size must be positive and finite");
    }
    for (const CircuitStep& step : circuit.steps) {
      validate_step(step, initial_.dims(), total);
    }
  }
}

bool Scenario::is_circuit() const {
  return std::holds_alternative<CircuitDynamics>(dynamics_);
}

const CircuitDynamics& Scenario::circuit() const {
  return std::get<CircuitDynamics>(dynamics_);
}

std::optional<std::string> Scenario::recorded_label(const std::string& branch,
                                                    std::size_t grid_index) const {
  if (!records_) return std::nullopt;
  return records_(branch, grid_index);
}

std::size_t Scenario::grid_index(double t) const {
  const CircuitDynamics& c = circuit();
  const double k = std::round(t / c.dt);
  if (!std::isfinite(k) || std::abs(t - k * c.dt) > kGridSnapTol) {
    throw EvaluationError("time " + std::to_string(t) + " is not on the step grid (dt = " +
                          std::to_string(c.dt) + ")");
  }
  if (k < 0.0 || k > static_cast<double>(c.steps.size())) {
    throw EvaluationError("time " + std::to_string(t) +
                          " is outside the simulated range [0, " +
                          std::to_string(c.duration()) + "]");
  }
  return static_cast<std::size_t>(k);
}

void Scenario::check_time(double t) const {
  if (!std::isfinite(t)) {
    throw EvaluationError("query time must be finite");
  }
  if (is_circuit()) {
    grid_index(t);
  }
}

StateVector state_at(const Scenario& sc, double t) {
  sc.check_time(t);
  if (const auto* h = std::get_if<HamiltonianDynamics>(&sc.dynamics())) {
    return evolve(h->hamiltonian, sc.initial(), t);
  }
  const CircuitDynamics& c = sc.circuit();
  const std::size_t k = sc.grid_index(t);
  StateVector psi = sc.initial();
  for (std::size_t i = 0; i < k; ++i) {
    psi = apply_step(c.steps[i], psi);
  }
  return psi;
}

StateVector propagate(const Scenario& sc, const StateVector& psi, double from, double to) {
  sc.check_time(from);
  sc.check_time(to);
  if (!(to >= from)) {
    throw EvaluationError("propagation requires to >= from");
  }
  if (psi.total_dim() != sc.initial().total_dim()) {
    throw DimensionError("state does not match the scenario dimension");
  }
  if (const auto* h = std::get_if<HamiltonianDynamics>(&sc.dynamics())) {
    return evolve(h->hamiltonian, psi, to - from);
  }
  const CircuitDynamics& c = sc.circuit();
  StateVector out = psi;
  for (std::size_t i = sc.grid_index(from); i < sc.grid_index(to); ++i) {
    out = apply_step(c.steps[i], out);
  }
  return out;
}

BranchDecomposition branches_at(const Scenario& sc, double t) {
  return decompose(state_at(sc, t), sc.basis(), sc.factorization());
}

}  // namespace everett
