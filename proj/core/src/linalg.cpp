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

#include "everett/linalg.hpp"

#include <atomic>
#include <cmath>
#include <utility>

namespace everett {

namespace {

std::atomic<Index> g_dimension_cap{Index{1} << 20};

Index checked_product(const std::vector<Index>& dims) {
  Index product = 1;
  for (Index d : dims) {
    if (d < 1) {
      throw DimensionError("tensor factor dimensions must be positive");
    }
    if (product > (Index{1} << 40) / d) {
      throw CapacityError("tensor dimension product overflows sane limits");
    }
    product *= d;
  }
  return product;
}

}  // namespace

Index dimension_cap() { return g_dimension_cap.load(); }

void set_dimension_cap(Index cap) {
  if (cap < 1) {
    throw DimensionError("dimension cap must be positive");
  }
  g_dimension_cap.store(cap);
}

StateVector::StateVector(std::vector<Index> dims, Eigen::VectorXcd amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
  if (dims_.empty()) {
    throw DimensionError("state vector needs at least one tensor factor");
  }
  if (checked_product(dims_) != amps_.size()) {
    throw DimensionError("amplitude count does not match the factor dimensions");
  }
  if (!amps_.allFinite()) {
    throw ValidationError("finiteness", "state vector has NaN/Inf amplitudes");
  }
}

StateVector StateVector::zero(std::vector<Index> dims) {
  Index total = checked_product(dims);
  return StateVector(std::move(dims), Eigen::VectorXcd::Zero(total));
}

StateVector StateVector::basis_state(std::vector<Index> dims, Index index) {
  Index total = checked_product(dims);
  if (index < 0 || index >= total) {
    throw DimensionError("basis state index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(total);
  amps(index) = Complex(1.0, 0.0);
  return StateVector(std::move(dims), std::move(amps));
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector StateVector::reshaped(std::vector<Index> dims) const {
  if (checked_product(dims) != total_dim()) {
    throw DimensionError("reshape must preserve the total dimension");
  }
  return StateVector(std::move(dims), amps_);
}

StateVector StateVector::scaled(Complex factor) const {
  return StateVector(dims_, amps_ * factor);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const Index na = a.total_dim();
  const Index nb = b.total_dim();
  if (na > dimension_cap() / nb) {
    throw CapacityError("tensor product exceeds the dimension cap of " +
                        std::to_string(dimension_cap()));
  }
  std::vector<Index> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());

  Eigen::VectorXcd amps(na * nb);
  for (Index i = 0; i < na; ++i) {
    amps.segment(i * nb, nb) = a.amp(i) * b.amps();
  }
  return StateVector(std::move(dims), std::move(amps));
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.total_dim() != b.total_dim()) {
    throw DimensionError("inner product requires equal total dimensions");
  }
  return a.amps().dot(b.amps());
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw DimensionError("operator must be a nonempty square matrix");
  }
  if (!matrix_.allFinite()) {
    throw ValidationError("finiteness", "operator has NaN/Inf entries");
  }
  const double dev = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kStructuralTol) {
    throw ValidationError("hermiticity",
                          "max|M - M^dagger| = " + std::to_string(dev));
  }
}

StateVector evolve(const HermitianOperator& h, const StateVector& psi, double dt) {
  if (h.dim() != psi.total_dim()) {
    throw DimensionError("generator dimension does not match the state");
  }
  if (!std::isfinite(dt)) {
    throw ValidationError("finiteness", "time step must be finite");
  }
  if (dt == 0.0) {
    return psi;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
  if (es.info() != Eigen::Success) {
    throw Error("eigendecomposition failed");
  }
  const Eigen::VectorXd& evals = es.eigenvalues();
  const Eigen::MatrixXcd& basis = es.eigenvectors();
  Eigen::VectorXcd phases(evals.size());
  for (Index k = 0; k < evals.size(); ++k) {
    phases(k) = std::polar(1.0, -evals(k) * dt);
  }
  Eigen::VectorXcd amps = basis * (phases.asDiagonal() * (basis.adjoint() * psi.amps()));
  return StateVector(psi.dims(), std::move(amps));
}

bool is_unitary(const Eigen::MatrixXcd& u, double tol) {
  if (u.rows() != u.cols() || u.rows() < 1 || !u.allFinite()) {
    return false;
  }
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

StateVector apply_unitary(const Eigen::MatrixXcd& u, const StateVector& psi,
                          const std::vector<int>& targets) {
  const std::vector<Index>& dims = psi.dims();
  const int nfactors = static_cast<int>(dims.size());
  if (targets.empty()) {
    throw DimensionError("at least one target factor is required");
  }
  std::vector<bool> seen(static_cast<std::size_t>(nfactors), false);
  Index gate_dim = 1;
  for (int t : targets) {
    if (t < 0 || t >= nfactors) {
      throw DimensionError("target factor index " + std::to_string(t) + " out of range");
    }
    if (seen[static_cast<std::size_t>(t)]) {
      throw DimensionError("duplicate target factor index " + std::to_string(t));
    }
    seen[static_cast<std::size_t>(t)] = true;
    gate_dim *= dims[static_cast<std::size_t>(t)];
  }
  if (u.rows() != gate_dim || u.cols() != gate_dim) {
    throw DimensionError("gate matrix does not match the product of target dims");
  }
  if (!is_unitary(u)) {
    throw ValidationError("unitarity", "gate matrix is not unitary within 1e-10");
  }

  // Row-major strides: first factor most significant.
  std::vector<Index> strides(dims.size());
  Index acc = 1;
  for (int f = nfactors - 1; f >= 0; --f) {
    strides[static_cast<std::size_t>(f)] = acc;
    acc *= dims[static_cast<std::size_t>(f)];
  }

  // Global offset of every gate-local index (targets[0] most significant).
  std::vector<Index> gate_offsets(static_cast<std::size_t>(gate_dim), 0);
  {
    std::vector<Index> idx(targets.size(), 0);
    for (Index g = 0; g < gate_dim; ++g) {
      Index off = 0;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        off += idx[i] * strides[static_cast<std::size_t>(targets[i])];
      }
      gate_offsets[static_cast<std::size_t>(g)] = off;
      for (std::size_t i = targets.size(); i-- > 0;) {
        if (++idx[i] < dims[static_cast<std::size_t>(targets[i])]) break;
        idx[i] = 0;
      }
    }
  }

  std::vector<int> rest;
  for (int f = 0; f < nfactors; ++f) {
    if (!seen[static_cast<std::size_t>(f)]) rest.push_back(f);
  }

  Eigen::VectorXcd out = psi.amps();
  Eigen::VectorXcd x(gate_dim);
  std::vector<Index> rest_idx(rest.size(), 0);
  const Index rest_count = psi.total_dim() / gate_dim;
  for (Index r = 0; r < rest_count; ++r) {
    Index base = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      base += rest_idx[i] * strides[static_cast<std::size_t>(rest[i])];
    }
    for (Index g = 0; g < gate_dim; ++g) {
      x(g) = psi.amps()(base + gate_offsets[static_cast<std::size_t>(g)]);
    }
    Eigen::VectorXcd y = u * x;
    for (Index g = 0; g < gate_dim; ++g) {
      out(base + gate_offsets[static_cast<std::size_t>(g)]) = y(g);
    }
    for (std::size_t i = rest.size(); i-- > 0;) {
      if (++rest_idx[i] < dims[static_cast<std::size_t>(rest[i])]) break;
      rest_idx[i] = 0;
    }
  }
  return StateVector(psi.dims(), std::move(out));
}

Eigen::MatrixXcd unitary_completion(const Eigen::VectorXcd& first_column) {
  const Index d = first_column.size();
  if (d < 1) {
    throw DimensionError("completion needs a nonempty column");
  }
  const double n = first_column.norm();
  if (std::abs(n - 1.0) > kNumericTol) {
    throw ValidationError("normalization", "first column must be a unit vector");
  }
  const Eigen::VectorXcd v = first_column / n;

  // Householder reflector sending v to mu*e_0 with |mu| = 1; the sign choice
  // avoids cancellation when v is already close to e_0.
  Complex mu(-1.0, 0.0);
  if (std::abs(v(0)) > 0.0) {
    mu = -v(0) / std::abs(v(0));
  }
  Eigen::VectorXcd w = v;
  w(0) -= mu;
  const double wn2 = w.squaredNorm();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(d, d);
  if (wn2 > 0.0) {
    h -= (2.0 / wn2) * (w * w.adjoint());
  }
  // H is Hermitian with H v = mu e_0, hence H(mu e_0) = v up to conj(mu)^2;
  // scaling column 0 by mu makes the first column exactly v.
  Eigen::MatrixXcd u = h;
  u.col(0) *= mu;
  return u;
}

}  // namespace everett
