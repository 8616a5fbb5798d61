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

#ifndef HQCM_CLASSICAL_HPP
#define HQCM_CLASSICAL_HPP

#include <vector>

#include "hqcm/linalg.hpp"

namespace hqcm {

// Probability-weighted diagonal density matrix over a fixed pointer basis.
// Probabilities are stored as a vector; the diagonal matrix view is
// materialized on demand, so diagonality cannot be broken by construction.
// Pointer identity is by index; duplicate energies are allowed.
class ClassicalState {
public:
  // Validates p_i >= 0 and sum = 1 within 1e-10. Negative entries within
  // 1e-12 are clamped to zero and the vector renormalized; larger
  // violations throw ValidationError.
  ClassicalState(RealVector probabilities, RealVector energies);

  // Uniform energies (all zero).
  explicit ClassicalState(RealVector probabilities);

  int pointer_count() const { return static_cast<int>(probs_.size()); }
  const RealVector &probabilities() const { return probs_; }
  const RealVector &energies() const { return energies_; }
  double probability(int i) const;

  // The implied diagonal rho_A as a dense complex matrix.
  ComplexMatrix matrix() const;

private:
  RealVector probs_;
  RealVector energies_;
};

// Infinitesimal generator of a classical Markov process: nonnegative
// off-diagonal rates, columns summing to zero.
class MarkovGenerator {
public:
  explicit MarkovGenerator(RealMatrix entries);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const RealMatrix &entries() const { return entries_; }

private:
  RealMatrix entries_;
};

// Column-stochastic transition matrix: T_ji >= 0, columns summing to one.
class TransitionMatrix {
public:
  explicit TransitionMatrix(RealMatrix entries);

  int dimension() const { return static_cast<int>(entries_.rows()); }
  const RealMatrix &entries() const { return entries_; }

private:
  RealMatrix entries_;
};

// Diagonal observable F = sum_i f_i |E_i><E_i| stored by its value vector.
class ClassicalObservable {
public:
  explicit ClassicalObservable(RealVector values) : values_(std::move(values)) {}

  int dimension() const { return static_cast<int>(values_.size()); }
  const RealVector &values() const { return values_; }
  ComplexMatrix matrix() const;

private:
  RealVector values_;
};

// Kraus operators K_j = sum_i sqrt(T_ji) |E_j><E_i| of the stochastic
// channel; satisfy sum_j K_j^dag K_j = identity.
std::vector<ComplexMatrix> kraus_from_transition(const TransitionMatrix &t);

// p'_j = sum_i T_ji p_i.
ClassicalState apply_channel(const ClassicalState &state,
                             const TransitionMatrix &t);

// p(t) = exp(G t) p(0).
ClassicalState evolve_master(const ClassicalState &state,
                             const MarkovGenerator &gen, double t);

// True iff |G_ji p_i - G_ij p_j| <= tol for all i != j; such states are
// stationary under evolve_master.
bool detailed_balance_holds(const MarkovGenerator &gen,
                            const ClassicalState &state,
                            double tol = kDefaultTol);

// -K sum_i p_i ln p_i, with 0 ln 0 = 0.
double shannon_information(const ClassicalState &state, double k_const = 1.0);

// <F> = sum_i p_i f_i.
double classical_expectation(const ClassicalObservable &obs,
                             const ClassicalState &state);

} // namespace hqcm

#endif
