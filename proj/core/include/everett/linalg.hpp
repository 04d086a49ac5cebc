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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "everett/errors.hpp"

namespace everett {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Tolerance for structural checks: hermiticity, unitarity, orthonormality.
inline constexpr double kStructuralTol = 1e-10;
/// Tolerance for numerical equality of computed values.
inline constexpr double kNumericTol = 1e-9;

/// Largest total dimension a dense state may have. Default 2^20.
Index dimension_cap();
void set_dimension_cap(Index cap);

/// A dense complex vector over a tensor-factored space. The first factor is
/// the most significant in the row-major amplitude layout: for dims
/// (d0, d1, ...) the amplitude of basis levels (i0, i1, ...) sits at
/// i0*(d1*d2*...) + i1*(d2*...) + ... Immutable after construction.
class StateVector {
 public:
  StateVector(std::vector<Index> dims, Eigen::VectorXcd amps);

  static StateVector zero(std::vector<Index> dims);
  static StateVector basis_state(std::vector<Index> dims, Index index);

  const std::vector<Index>& dims() const { return dims_; }
  Index total_dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Complex amp(Index i) const { return amps_(i); }

  double norm() const { return amps_.norm(); }
  double squared_norm() const { return amps_.squaredNorm(); }
  bool is_normalized(double tol = kNumericTol) const;

  /// Same amplitudes under a different factor split (total dim must match).
  StateVector reshaped(std::vector<Index> dims) const;
  StateVector scaled(Complex factor) const;

 private:
  std::vector<Index> dims_;
  Eigen::VectorXcd amps_;
};

/// Kronecker product; dims are concatenated. Throws CapacityError when the
/// product dimension exceeds the configured cap.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Hermitian inner product, conjugate-linear in `a`.
Complex inner(const StateVector& a, const StateVector& b);

/// Square matrix validated to satisfy max|M - M^dagger| <= 1e-10.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd matrix);

  Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

/// Schroedinger propagator: returns e^{-iH dt} psi (hbar = 1), computed via
/// Hermitian eigendecomposition. dt may be negative. Norm-preserving to 1e-10.
StateVector evolve(const HermitianOperator& h, const StateVector& psi, double dt);

/// max|U^dagger U - I| <= tol.
bool is_unitary(const Eigen::MatrixXcd& u, double tol = kStructuralTol);

/// Applies a unitary to the listed tensor factors (identity elsewhere).
/// `u` is indexed over the product of the target dims, with targets[0] the
/// most significant factor.
StateVector apply_unitary(const Eigen::MatrixXcd& u, const StateVector& psi,
                          const std::vector<int>& targets);

/// Unitary matrix whose first column equals the given unit vector
/// (complex Householder completion).
Eigen::MatrixXcd unitary_completion(const Eigen::VectorXcd& first_column);

}  // namespace everett
