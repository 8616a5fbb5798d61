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

#include "hqcm/quantum.hpp"

#include <algorithm>
#include <cmath>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

// Eigenvalues below this are treated as exactly zero in entropy sums.
constexpr double kSpectrumFloor = 1e-14;

} // namespace

QuantumState::QuantumState(ComplexMatrix rho, double tol) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw DimensionError("QuantumState: density matrix must be square");
  }
  if (!is_hermitian(rho_, tol)) {
    throw ValidationError("QuantumState: density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > tol) {
    throw ValidationError("QuantumState: trace is " +
                          std::to_string(rho_.trace().real()) +
                          ", expected 1");
  }
  if (!is_positive_semidefinite(rho_, tol)) {
    throw ValidationError("QuantumState: density matrix is not positive "
                          "semidefinite");
  }
}

QuantumState QuantumState::pure(const ComplexVector &psi) {
  double norm = psi.norm();
  if (std::abs(norm - 1.0) > kDefaultTol) {
    throw ContractError("QuantumState::pure: vector norm is " +
                        std::to_string(norm) + ", expected 1");
  }
  return QuantumState(psi * psi.adjoint());
}

QuantumState QuantumState::maximally_mixed(int dimension) {
  return QuantumState(ComplexMatrix::Identity(dimension, dimension) /
                      static_cast<double>(dimension));
}

MeasurementBasis::MeasurementBasis(ComplexMatrix columns, double tol)
    : columns_(std::move(columns)) {
  if (columns_.rows() != columns_.cols() || columns_.rows() == 0) {
    throw DimensionError("MeasurementBasis: need d vectors of dimension d");
  }
  ComplexMatrix gram = columns_.adjoint() * columns_;
  if (max_abs(gram - ComplexMatrix::Identity(columns_.rows(),
                                             columns_.rows())) > tol) {
    throw ContractError("MeasurementBasis: vectors are not orthonormal");
  }
}

ComplexVector MeasurementBasis::vector(int m) const {
  if (m < 0 || m >= dimension()) {
    throw BoundsError("MeasurementBasis::vector: index " + std::to_string(m) +
                      " out of range");
  }
  return columns_.col(m);
}

MeasurementBasis MeasurementBasis::computational(int dimension) {
  return MeasurementBasis(ComplexMatrix::Identity(dimension, dimension));
}

MeasurementBasis MeasurementBasis::plus_minus() {
  ComplexMatrix cols(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  cols << s, s, s, -s;
  return MeasurementBasis(cols);
}

QuantumState von_neumann_evolve(const QuantumState &state,
                                const ComplexMatrix &h, double t,
                                double hbar) {
  if (h.rows() != state.dimension() || h.cols() != state.dimension()) {
    throw DimensionError("von_neumann_evolve: Hamiltonian dimension mismatch");
  }
  ComplexMatrix u = unitary_exp(h, t, hbar);
  return QuantumState(u * state.matrix() * u.adjoint());
}

double born_probability(const QuantumState &state,
                        const MeasurementBasis &basis, int m) {
  if (basis.dimension() != state.dimension()) {
    throw DimensionError("born_probability: basis dimension mismatch");
  }
  ComplexVector phi = basis.vector(m);
  double p = (phi.adjoint() * state.matrix() * phi)(0).real();
  return std::clamp(p, 0.0, 1.0);
}

QuantumState reduce_state(const QuantumState &state,
                          const MeasurementBasis &basis, int m) {
  double p = born_probability(state, basis, m);
  if (p <= 1e-12) {
    throw ImpossibleOutcomeError("reduce_state: outcome " + std::to_string(m) +
                                 " has zero probability");
  }
  ComplexVector phi = basis.vector(m);
  return QuantumState(phi * phi.adjoint());
}

double von_neumann_entropy(const QuantumState &state, double k_const) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(state.matrix(),
                                                  Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam > kSpectrumFloor) {
      s -= lam * std::log(lam);
    }
  }
  return k_const * std::max(s, 0.0);
}

} // namespace hqcm
