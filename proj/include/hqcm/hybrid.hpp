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

#ifndef HQCM_HYBRID_HPP
#define HQCM_HYBRID_HPP

#include <optional>
#include <vector>

#include "hqcm/classical.hpp"
#include "hqcm/quantum.hpp"

namespace hqcm {

// Block-diagonal quantum-classical state: weights p_i over the pointer
// basis with one conditional system state per pointer of nonzero weight.
// The native representation is the (weights, blocks) decomposition, so the
// absence of cross-pointer coherences is structural; the full (n*d)^2
// matrix is materialized only for cross-checks. Zero-weight pointers carry
// an absent block, since no conditional state is defined for them.
class HybridState {
public:
  int apparatus_dim() const { return static_cast<int>(weights_.size()); }
  int system_dim() const { return system_dim_; }
  const RealVector &weights() const { return weights_; }
  const RealVector &energies() const { return energies_; }
  const std::optional<QuantumState> &block(int i) const;

  // Weight of pointer i, cross-checkable against
  // Tr[(|E_i><E_i| x 1) rho_AS].
  double pointer_probability(int i) const;

  // Conditional system state given pointer i. Throws for zero-weight
  // pointers, where the formalism leaves the block undefined.
  const QuantumState &conditional_state(int i) const;

  // The full block-diagonal matrix sum_i p_i |E_i><E_i| x rho_S^(i).
  ComplexMatrix materialize() const;

  friend HybridState assemble_hybrid(RealVector,
                                     std::vector<std::optional<QuantumState>>,
                                     RealVector);

private:
  HybridState(RealVector weights,
              std::vector<std::optional<QuantumState>> blocks,
              RealVector energies, int system_dim)
      : weights_(std::move(weights)), blocks_(std::move(blocks)),
        energies_(std::move(energies)), system_dim_(system_dim) {}

  RealVector weights_;
  std::vector<std::optional<QuantumState>> blocks_;
  RealVector energies_;
  int system_dim_;
};

// Weight below which a pointer is treated as eliminated and its block left
// absent.
inline constexpr double kWeightFloor = 1e-12;

// Build a hybrid state from weights and per-pointer conditional states.
// Blocks for weights <= kWeightFloor may be absent; present blocks must all
// share a dimension. Energies default to zero.
HybridState assemble_hybrid(RealVector weights,
                            std::vector<std::optional<QuantumState>> blocks,
                            RealVector energies = RealVector());

HybridState assemble_hybrid(RealVector weights,
                            std::vector<QuantumState> blocks,
                            RealVector energies = RealVector());

// Check an explicit (n*d)x(n*d) matrix for Hermiticity, unit trace,
// positivity, and vanishing off-diagonal pointer blocks, then parse it into
// a HybridState. Coherences raise ClassicalityError naming the offending
// block pair and its max magnitude.
HybridState validate_hybrid_matrix(const ComplexMatrix &m, int n, int d,
                                   double tol = kDefaultTol);

// Tr_S: the classical apparatus marginal with probabilities = weights.
ClassicalState reduce_to_apparatus(const HybridState &state);

// Tr_A: the convex combination sum_i p_i rho_S^(i).
QuantumState reduce_to_system(const HybridState &state);

} // namespace hqcm

#endif
