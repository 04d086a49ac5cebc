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
#include <string_view>
#include <unordered_map>
#include <vector>

#include "everett/linalg.hpp"

namespace everett {

/// A branch whose squared norm is at or below this does not exist.
inline constexpr double kBranchEpsilon = 1e-12;

/// Split of the universal space into observer x environment. The observer
/// factor group always comes first in the tensor layout.
struct Factorization {
  Index dim_s = 0;
  Index dim_e = 0;

  void validate(Index total_dim) const;
};

/// Orthonormal labeled basis of the observer factor. Either the
/// computational basis (vectors implicit) or explicitly supplied columns.
class ExperienceBasis {
 public:
  static ExperienceBasis computational(std::vector<std::string> labels);
  static ExperienceBasis with_vectors(std::vector<std::string> labels,
                                      Eigen::MatrixXcd vectors);

  Index dim() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index n) const { return labels_[static_cast<std::size_t>(n)]; }
  bool is_computational() const { return !vectors_.has_value(); }

  /// Basis vector n as a dense column (synthesized for the computational basis).
  Eigen::VectorXcd vector(Index n) const;

  std::optional<Index> index_of(std::string_view label) const;

 private:
  ExperienceBasis(std::vector<std::string> labels, std::optional<Eigen::MatrixXcd> vectors);

  std::vector<std::string> labels_;
  std::optional<Eigen::MatrixXcd> vectors_;
  std::unordered_map<std::string, Index> index_;
};

/// One relative state: label, unnormalized environment state, and its weight
/// w = <phi|phi>.
struct BranchEntry {
  std::string label;
  StateVector phi;
  double weight = 0.0;
};

/// Relative states of every experience label, in basis order.
class BranchDecomposition {
 public:
  explicit BranchDecomposition(std::vector<BranchEntry> entries);

  const std::vector<BranchEntry>& entries() const { return entries_; }
  Index size() const { return static_cast<Index>(entries_.size()); }
  const BranchEntry& entry(Index n) const { return entries_[static_cast<std::size_t>(n)]; }

  /// Weight of the branch with the given label, if the label exists.
  std::optional<double> weight_of(std::string_view label) const;

 private:
  std::vector<BranchEntry> entries_;
};

/// Splits psi into relative states phi_n = (<eta_n| x I) psi, in basis
/// label order.
BranchDecomposition decompose(const StateVector& psi, const ExperienceBasis& basis,
                              const Factorization& f);

/// Sum of eta_n x phi_n; inverse of decompose.
StateVector reconstruct(const BranchDecomposition& d, const ExperienceBasis& basis);

/// Labels with weight > epsilon, heaviest first; ties keep basis order.
std::vector<std::string> real_experiences(const BranchDecomposition& d,
                                          double epsilon = kBranchEpsilon);

}  // namespace everett
