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

#include <optional>
#include <string>
#include <vector>

#include "everett/scenario.hpp"

namespace everett {

struct TransitionQuery {
  std::string from_label;
  double t = 0.0;
  std::string to_label;
  double s = 0.0;
};

/// Probability, relative to experiencing `from_label` at time t, of
/// experiencing `to_label` at the future time s >= t:
///
///   |(<eta_m| <Phi_m(s)|) U(s,t) (|eta_n> |Phi_n(t)>)|^2
///   ---------------------------------------------------
///        <Phi_m(s)|Phi_m(s)> <Phi_n(t)|Phi_n(t)>
///
/// where Phi are branches of the full evolved state at each time and U(s,t)
/// is the scenario propagator. Throws NullBranchError when either branch
/// weight is at or below kBranchEpsilon, EvaluationError for s < t or
/// unknown labels. The result lies in [0,1].
double transition_probability(const Scenario& sc, const TransitionQuery& q);

/// transition_probability restricted to cross-branch queries
/// (from_label != to_label); the interference-revival diagnostic.
double revival_probability(const Scenario& sc, const TransitionQuery& q);

/// All transition probabilities between times t and s. Entries conditioned
/// on or targeting a null branch are absent rather than zero.
class TransitionMatrix {
 public:
  TransitionMatrix(std::vector<std::string> labels,
                   std::vector<std::optional<double>> cells);

  const std::vector<std::string>& labels() const { return labels_; }
  Index size() const { return static_cast<Index>(labels_.size()); }

  /// P(to = m at s | from = n at t); absent for null branches.
  const std::optional<double>& at(Index m, Index n) const;

  /// Diagnostic only: sum over live target branches of column n. The sum is
  /// not asserted to equal 1; from multi-branch contexts it may fall below.
  std::optional<double> column_sum(Index n) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::optional<double>> cells_;  // row-major [m][n]
};

TransitionMatrix transition_matrix(const Scenario& sc, double t, double s);

}  // namespace everett
