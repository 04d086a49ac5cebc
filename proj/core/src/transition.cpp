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

#include "everett/transition.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "everett/parallel.hpp"

namespace everett {

namespace {

Index require_label(const Scenario& sc, const std::string& label) {
  if (auto idx = sc.basis().index_of(label)) {
    return *idx;
  }
  throw EvaluationError("unknown experience label '" + label + "'");
}

void require_ordered_times(const Scenario& sc, double t, double s) {
  sc.check_time(t);
  sc.check_time(s);
  if (!(s >= t)) {
    throw EvaluationError("queries run forward: s >= t is required");
  }
}

// eta_n x phi, reshaped to the scenario's factor layout.
StateVector branch_state(const Scenario& sc, Index n, const StateVector& phi) {
  StateVector eta({sc.factorization().dim_s}, sc.basis().vector(n));
  return tensor(eta, phi).reshaped(sc.dims());
}

double clamp_probability(double p) {
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

double transition_probability(const Scenario& sc, const TransitionQuery& q) {
  const Index n = require_label(sc, q.from_label);
  const Index m = require_label(sc, q.to_label);
  require_ordered_times(sc, q.t, q.s);

  const StateVector psi_t = state_at(sc, q.t);
  const StateVector psi_s = propagate(sc, psi_t, q.t, q.s);
  const BranchDecomposition d_t = decompose(psi_t, sc.basis(), sc.factorization());
  const BranchDecomposition d_s = decompose(psi_s, sc.basis(), sc.factorization());

  const double w_n = d_t.entry(n).weight;
  const double w_m = d_s.entry(m).weight;
  if (w_n <= kBranchEpsilon) {
    throw NullBranchError("null branch: '" + q.from_label + "' does not exist at t = " +
                          std::to_string(q.t));
  }
  if (w_m <= kBranchEpsilon) {
    throw NullBranchError("null branch: '" + q.to_label + "' does not exist at s = " +
                          std::to_string(q.s));
  }

  const StateVector conditional = branch_state(sc, n, d_t.entry(n).phi);
  const StateVector carried = propagate(sc, conditional, q.t, q.s);
  const StateVector target = branch_state(sc, m, d_s.entry(m).phi);

  const double numerator = std::norm(inner(target, carried));
  return clamp_probability(numerator / (w_m * w_n));
}

double revival_probability(const Scenario& sc, const TransitionQuery& q) {
  if (q.from_label == q.to_label) {
    throw EvaluationError("revival queries cross branches: from and to must differ");
  }
  return transition_probability(sc, q);
}

TransitionMatrix::TransitionMatrix(std::vector<std::string> labels,
                                   std::vector<std::optional<double>> cells)
    : labels_(std::move(labels)), cells_(std::move(cells)) {
  if (cells_.size() != labels_.size() * labels_.size()) {
    throw DimensionError("cell count does not match the label count");
  }
}

const std::optional<double>& TransitionMatrix::at(Index m, Index n) const {
  if (m < 0 || m >= size() || n < 0 || n >= size()) {
    throw DimensionError("transition matrix index out of range");
  }
  return cells_[static_cast<std::size_t>(m * size() + n)];
}

std::optional<double> TransitionMatrix::column_sum(Index n) const {
  std::optional<double> sum;
  for (Index m = 0; m < size(); ++m) {
    if (const auto& cell = at(m, n)) {
      sum = sum.value_or(0.0) + *cell;
    }
  }
  return sum;
}

TransitionMatrix transition_matrix(const Scenario& sc, double t, double s) {
  require_ordered_times(sc, t, s);

  const StateVector psi_t = state_at(sc, t);
  const StateVector psi_s = propagate(sc, psi_t, t, s);
  const BranchDecomposition d_t = decompose(psi_t, sc.basis(), sc.factorization());
  const BranchDecomposition d_s = decompose(psi_s, sc.basis(), sc.factorization());

  const Index dim_s = sc.basis().dim();
  std::vector<Index> live_from;
  std::vector<Index> live_to;
  for (Index k = 0; k < dim_s; ++k) {
    if (d_t.entry(k).weight > kBranchEpsilon) live_from.push_back(k);
    if (d_s.entry(k).weight > kBranchEpsilon) live_to.push_back(k);
  }

  std::vector<StateVector> targets;
  targets.reserve(live_to.size());
  for (Index m : live_to) {
    targets.push_back(branch_state(sc, m, d_s.entry(m).phi));
  }

  std::vector<std::optional<double>> cells(
      static_cast<std::size_t>(dim_s) * static_cast<std::size_t>(dim_s));
  parallel_for(live_from.size(), [&](std::size_t col) {
    const Index n = live_from[col];
    const double w_n = d_t.entry(n).weight;
    const StateVector carried =
        propagate(sc, branch_state(sc, n, d_t.entry(n).phi), t, s);
    for (std::size_t row = 0; row < live_to.size(); ++row) {
      const Index m = live_to[row];
      const double w_m = d_s.entry(m).weight;
      const double numerator = std::norm(inner(targets[row], carried));
      cells[static_cast<std::size_t>(m * dim_s + n)] =
          clamp_probability(numerator / (w_m * w_n));
    }
  });

  std::vector<std::string> labels = sc.basis().labels();
  return TransitionMatrix(std::move(labels), std::move(cells));
}

}  // namespace everett
