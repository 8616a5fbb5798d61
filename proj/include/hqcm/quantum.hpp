// Copyright 2026 The hqcm authors
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

#ifndef HQCM_QUANTUM_HPP
#define HQCM_QUANTUM_HPP

#include "hqcm/linalg.hpp"

namespace hqcm {

// Density matrix of the measured system: Hermitian, unit trace, positive
// semidefinite (all within 1e-10).
class QuantumState {
public:
  explicit QuantumState(ComplexMatrix rho, double tol = kDefaultTol);

  int dimension() const { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix &matrix() const { return rho_; }

  // Pure state |psi><psi| from a normalized vector.
  static QuantumState pure(const ComplexVector &psi);

  static QuantumState maximally_mixed(int dimension);

private:
  ComplexMatrix rho_;
};

// Orthonormal measurement basis stored column-wise.
class MeasurementBasis {
public:
  explicit MeasurementBasis(ComplexMatrix columns, double tol = kDefaultTol);

  int dimension() const { return static_cast<int>(columns_.rows()); }
  ComplexVector vector(int m) const;
  const ComplexMatrix &columns() const { return columns_; }

  static MeasurementBasis computational(int dimension);

  // {|+>, |->} for a qubit.
  static MeasurementBasis plus_minus();

private:
  ComplexMatrix columns_;
};

// rho(t) = U rho(0) U^dag with U = exp(-i h t / hbar).
QuantumState von_neumann_evolve(const QuantumState &state,
                                const ComplexMatrix &h, double t,
                                double hbar = 1.0);

// <phi_m| rho |phi_m>, clamped to [0, 1].
double born_probability(const QuantumState &state,
                        const MeasurementBasis &basis, int m);

// Projective collapse onto |phi_m>. Throws ImpossibleOutcomeError when the
// outcome probability vanishes.
QuantumState reduce_state(const QuantumState &state,
                          const MeasurementBasis &basis, int m);

// -K sum_i lambda_i ln lambda_i over the spectrum of rho.
double von_neumann_entropy(const QuantumState &state, double k_const = 1.0);

} // namespace hqcm

#endif
