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

#include "everett/universe.hpp"

#include <algorithm>
#include <utility>

namespace everett {

void Factorization::validate(Index total_dim) const {
  if (dim_s < 1 || dim_e < 1) {
    throw ValidationError("factorization", "factor dimensions must be positive");
  }
  if (dim_s * dim_e != total_dim) {
    throw ValidationError("factorization",
                          "dim_S * dim_E = " + std::to_string(dim_s * dim_e) +
                              " does not equal the total dimension " +
                              std::to_string(total_dim));
  }
}

ExperienceBasis::ExperienceBasis(std::vector<std::string> labels,
                                 std::optional<Eigen::MatrixXcd> vectors)
    : labels_(std::move(labels)), vectors_(std::move(vectors)) {
  if (labels_.empty()) {
    throw ValidationError("labels-distinct", "basis needs at least one label");
  }
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    if (labels_[n].empty()) {
      throw ValidationError("labels-distinct", "basis labels must be nonempty");
    }
    auto [it, inserted] = index_.emplace(labels_[n], static_cast<Index>(n));
    if (!inserted) {
      throw ValidationError("labels-distinct", "duplicate basis label '" + labels_[n] + "'");
    }
  }
  if (vectors_) {
    const Index d = dim();
    if (vectors_->rows() != d || vectors_->cols() != d) {
      throw DimensionError("basis matrix must be square with one column per label");
    }
    if (!vectors_->allFinite()) {
      throw ValidationError("finiteness", "basis vectors have NaN/Inf entries");
    }
    const Eigen::MatrixXcd gram = vectors_->adjoint() * (*vectors_);
    const double dev = (gram - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kStructuralTol) {
      throw ValidationError("orthonormality",
                            "max|<eta_i|eta_j> - delta_ij| = " + std::to_string(dev));
    }
  }
}

ExperienceBasis ExperienceBasis::computational(std::vector<std::string> labels) {
  return ExperienceBasis(std::move(labels), std::nullopt);
}

ExperienceBasis ExperienceBasis::with_vectors(std::vector<std::string> labels,
                                              Eigen::MatrixXcd vectors) {
  return ExperienceBasis(std::move(labels), std::make_optional(std::move(vectors)));
}

Eigen::VectorXcd ExperienceBasis::vector(Index n) const {
  if (n < 0 || n >= dim()) {
    throw DimensionError("basis index out of range");
  }
  if (vectors_) {
    return vectors_->col(n);
  }
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim());
  e(n) = Complex(1.0, 0.0);
  return e;
}

std::optional<Index> ExperienceBasis::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BranchDecomposition::BranchDecomposition(std::vector<BranchEntry> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw DimensionError("decomposition needs at least one entry");
  }
}

std::optional<double> BranchDecomposition::weight_of(std::string_view label) const {
  for (const BranchEntry& e : entries_) {
    if (e.label == label) return e.weight;
  }
  return std::nullopt;
}

BranchDecomposition decompose(const StateVector& psi, const ExperienceBasis& basis,
                              const Factorization& f) {
  f.validate(psi.total_dim());
  if (basis.dim() != f.dim_s) {
    throw DimensionError("basis dimension does not match the observer factor");
  }
  const Index dim_e = f.dim_e;
  std::vector<BranchEntry> entries;
  entries.reserve(static_cast<std::size_t>(f.dim_s));
  if (basis.is_computational()) {
    for (Index n = 0; n < f.dim_s; ++n) {
      Eigen::VectorXcd phi = psi.amps().segment(n * dim_e, dim_e);
      double w = phi.squaredNorm();
      entries.push_back({basis.label(n), StateVector({dim_e}, std::move(phi)), w});
    }
  } else {
    // psi viewed as a dim_S x dim_E matrix; phi_n = eta_n^dagger applied to it.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        m(psi.amps().data(), f.dim_s, dim_e);
    for (Index n = 0; n < f.dim_s; ++n) {
      Eigen::VectorXcd phi = (basis.vector(n).adjoint() * m).transpose();
      double w = phi.squaredNorm();
      entries.push_back({basis.label(n), StateVector({dim_e}, std::move(phi)), w});
    }
  }
  return BranchDecomposition(std::move(entries));
}

StateVector reconstruct(const BranchDecomposition& d, const ExperienceBasis& basis) {
  if (d.size() != basis.dim()) {
    throw ValidationError("labels-match", "entry count does not match the basis");
  }
  const Index dim_e = d.entry(0).phi.total_dim();
  for (Index n = 0; n < d.size(); ++n) {
    if (d.entry(n).label != basis.label(n)) {
      throw ValidationError("labels-match",
                            "entry label '" + d.entry(n).label + "' does not match basis label '" +
                                basis.label(n) + "'");
    }
    if (d.entry(n).phi.total_dim() != dim_e) {
      throw DimensionError("relative states must share one environment dimension");
    }
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.dim() * dim_e);
  if (basis.is_computational()) {
    for (Index n = 0; n < d.size(); ++n) {
      amps.segment(n * dim_e, dim_e) = d.entry(n).phi.amps();
    }
  } else {
    Eigen::Map<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
        amps.data(), basis.dim(), dim_e);
    for (Index n = 0; n < d.size(); ++n) {
      m += basis.vector(n) * d.entry(n).phi.amps().transpose();
    }
  }
  return StateVector({basis.dim(), dim_e}, std::move(amps));
}

std::vector<std::string> real_experiences(const BranchDecomposition& d, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw ValidationError("epsilon", "reality threshold must be >= 0");
  }
  std::vector<Index> order;
  for (Index n = 0; n < d.size(); ++n) {
    if (d.entry(n).weight > epsilon) order.push_back(n);
  }
  // Stable: equal weights keep basis label order.
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return d.entry(a).weight > d.entry(b).weight; });
  std::vector<std::string> labels;
  labels.reserve(order.size());
  for (Index n : order) labels.push_back(d.entry(n).label);
  return labels;
}

}  // namespace everett
