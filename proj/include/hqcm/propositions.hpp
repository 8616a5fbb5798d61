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

#ifndef HQCM_PROPOSITIONS_HPP
#define HQCM_PROPOSITIONS_HPP

#include <set>
#include <vector>

#include "hqcm/quantum.hpp"

namespace hqcm {

// Experimental proposition represented by a projector: Hermitian,
// idempotent, eigenvalues in {0, 1}. Deliberately a distinct type from any
// observable; a projector cannot be measured.
class Proposition {
public:
  explicit Proposition(ComplexMatrix projector, double tol = kDefaultTol);

  int dimension() const { return static_cast<int>(p_.rows()); }
  const ComplexMatrix &projector() const { return p_; }

  static Proposition always_true(int dimension);
  static Proposition always_false(int dimension);

private:
  ComplexMatrix p_;
};

// Diagonal 0/1 projector on a subset of pointer indices.
Proposition from_pointer_subset(int n, const std::set<int> &subset);

// Commutativity of the projectors within tol.
bool compatible(const Proposition &p, const Proposition &q,
                double tol = kDefaultTol);

// P AND Q = PQ, valid for commuting projectors only.
Proposition conjunction(const Proposition &p, const Proposition &q,
                        double tol = kDefaultTol);

// P OR Q = P + Q - PQ, valid for commuting projectors only.
Proposition disjunction(const Proposition &p, const Proposition &q,
                        double tol = kDefaultTol);

// NOT P = 1 - P.
Proposition complement(const Proposition &p);

// trace(P rho), clamped to [0, 1].
double truth_probability(const Proposition &p, const QuantumState &state);

// True iff all pairs commute and the set is closed under conjunction,
// disjunction, and complement within tol. Distributivity is spot-checked on
// sampled triples.
bool boolean_sublattice_check(const std::vector<Proposition> &props,
                              double tol = kDefaultTol);

} // namespace hqcm

#endif
