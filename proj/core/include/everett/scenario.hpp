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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "everett/linalg.hpp"
#include "everett/universe.hpp"

namespace everett {

struct HamiltonianDynamics {
  HermitianOperator hamiltonian;
};

/// A unitary applied to selected tensor factors.
struct DenseGate {
  Eigen::MatrixXcd unitary;
  std::vector<int> targets;
};

/// Rotation in the plane of two global basis states:
///   e_i -> cos*e_i + sin*e_j,  e_j -> -sin*e_i + cos*e_j,
/// identity on every other amplitude.
struct PlaneRotation {
  Index i = 0;
  Index j = 0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
};

using CircuitStep = std::variant<DenseGate, PlaneRotation>;

/// Discrete-step dynamics: step k advances time from (k-1)*dt to k*dt.
/// Queries are restricted to the grid {0, dt, ..., steps*dt}.
struct CircuitDynamics {
  double dt = 0.0;
  std::vector<CircuitStep> steps;

  double duration() const { return dt * static_cast<double>(steps.size()); }
};

using Dynamics = std::variant<HamiltonianDynamics, CircuitDynamics>;

/// Memory model: maps (experience label, grid index) to the experience label
/// implied at that grid time. Scenarios without one leave the past undetermined.
using RecordMap =
    std::function<std::optional<std::string>(const std::string& branch, std::size_t grid_index)>;

/// Immutable bundle of dynamics, normalized initial state, observer
/// factorization, and labeled experience basis. All invariants are checked
/// at construction.
class Scenario {
 public:
  Scenario(std::string name, StateVector initial, Factorization factorization,
           ExperienceBasis basis, Dynamics dynamics, RecordMap records = nullptr);

  const std::string& name() const { return name_; }
  const StateVector& initial() const { return initial_; }
  const Factorization& factorization() const { return factorization_; }
  const ExperienceBasis& basis() const { return basis_; }
  const Dynamics& dynamics() const { return dynamics_; }
  const std::vector<Index>& dims() const { return initial_.dims(); }

  bool is_circuit() const;
  const CircuitDynamics& circuit() const;

  bool has_records() const { return static_cast<bool>(records_); }
  std::optional<std::string> recorded_label(const std::string& branch,
                                            std::size_t grid_index) const;

  /// Circuit scenarios: maps t to its step-grid index; throws
  /// EvaluationError for off-grid or out-of-range times.
  std::size_t grid_index(double t) const;

  /// Validates that t is a legal query time for this scenario's dynamics.
  void check_time(double t) const;

 private:
  std::string name_;
  StateVector initial_;
  Factorization factorization_;
  ExperienceBasis basis_;
  Dynamics dynamics_;
  RecordMap records_;
};

/// |Psi(t)>: the initial state carried to time t by the scenario dynamics.
StateVector state_at(const Scenario& sc, double t);

/// Carries an arbitrary state from time `from` to `to >= from`.
StateVector propagate(const Scenario& sc, const StateVector& psi, double from, double to);

/// decompose(state_at(sc, t)) with the scenario's basis and factorization.
BranchDecomposition branches_at(const Scenario& sc, double t);

// --- Builders -------------------------------------------------------------

inline constexpr const char* kCatAliveLabel = "alive";

/// "died@k" for decay seen in time bin k (1-based).
std::string cat_died_label(std::size_t bin);

/// Two-component decay state at time t on a 2-dim space:
/// e^{-gamma t}|alive> + sqrt(1 - e^{-2 gamma t})|dead>.
StateVector build_cat_plain(double gamma, double t);

/// Watched decay: 4-dim state with the observer factor first,
/// e^{-gamma t}|happy>|alive> + sqrt(1 - e^{-2 gamma t})|sad>|dead>.
StateVector build_cat_observed(double gamma, double t);

struct CatParams {
  double gamma = 0.0;   // decay rate, inverse time
  double dt = 0.0;      // time-bin width
  std::size_t steps = 0;  // number of record bins
};

/// Continuously-watched decay, discretized into `steps` record bins of width
/// dt. The observer factor is the record register (dim steps+1: level 0 =
/// nothing seen, level k = decay seen in bin k); the environment factor is
/// the decaying two-level system. Step k rotates |0,alive> toward |k,dead>
/// by cos(theta) = e^{-gamma dt} and leaves previously written branches
/// untouched, so grid-time marginals are exact. Ships a record map for
/// past-tense evaluation.
Scenario build_cat_record_circuit(const CatParams& p);

/// One-step measurement: the single-branch initial state develops into
/// sum_k alpha_k |eta_k>|phi_k> with orthogonal phi_k.
Scenario build_measurement(const std::vector<Complex>& amplitudes,
                           const std::vector<std::string>& labels);

/// Parses and fully validates a JSON scenario document.
Scenario load_scenario(const std::string& config_text);

}  // namespace everett
