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

#ifndef HQCM_LINALG_HPP
#define HQCM_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

namespace hqcm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default tolerance for structural checks (Hermiticity, diagonality,
// positivity) on dimension <= 64 matrices.
inline constexpr double kDefaultTol = 1e-10;

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix &m);

// Max elementwise |m - dagger(m)| <= tol. Throws DimensionError if non-square.
bool is_hermitian(const ComplexMatrix &m, double tol = kDefaultTol);

// Min eigenvalue >= -tol via a Hermitian eigensolver. Throws ContractError
// if the input is not Hermitian within tol.
bool is_positive_semidefinite(const ComplexMatrix &m, double tol = kDefaultTol);

// Sum of diagonal entries. Throws DimensionError if non-square.
Complex trace(const ComplexMatrix &m);

// Kronecker product, left factor major (apparatus index on the left).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

// Trace out the right (system) factor: result is dim_a x dim_a.
ComplexMatrix partial_trace_system(const ComplexMatrix &m, int dim_a,
                                   int dim_s);

// Trace out the left (apparatus) factor: result is dim_s x dim_s.
ComplexMatrix partial_trace_apparatus(const ComplexMatrix &m, int dim_a,
                                      int dim_s);

// U = exp(-i h t / hbar) by Hermitian eigendecomposition. Throws
// ContractError if h is not Hermitian within tol.
ComplexMatrix unitary_exp(const ComplexMatrix &h, double t, double hbar = 1.0,
                          double tol = kDefaultTol);

// exp(g t) for arbitrary square g (scaling-and-squaring). Used for
// non-Hermitian Markov generators.
ComplexMatrix general_exp(const ComplexMatrix &g, double t);

// Largest |entry| of m; 0 for empty.
double max_abs(const ComplexMatrix &m);

} // namespace hqcm

#endif
