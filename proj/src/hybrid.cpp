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

#include "hqcm/hybrid.hpp"

#include <cmath>

#include "hqcm/errors.hpp"

namespace hqcm {

const std::optional<QuantumState> &HybridState::block(int i) const {
  if (i < 0 || i >= apparatus_dim()) {
    throw BoundsError("HybridState::block: index " + std::to_string(i) +
                      " out of range");
  }
  return blocks_[static_cast<std::size_t>(i)];
}

double HybridState::pointer_probability(int i) const {
  if (i < 0 || i >= apparatus_dim()) {
    throw BoundsError("HybridState::pointer_probability: index " +
                      std::to_string(i) + " out of range");
  }
  return weights_(i);
}

const QuantumState &HybridState::conditional_state(int i) const {
  const auto &b = block(i);
  if (!b.has_value()) {
    throw ImpossibleOutcomeError(
        "HybridState::conditional_state: pointer " + std::to_string(i) +
        " has zero weight; no conditional state is defined");
  }
  return *b;
}

ComplexMatrix HybridState::materialize() const {
  const int n = apparatus_dim();
  const int d = system_dim_;
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    if (blocks_[static_cast<std::size_t>(i)].has_value()) {
      out.block(i * d, i * d, d, d) =
          weights_(i) * blocks_[static_cast<std::size_t>(i)]->matrix();
    }
  }
  return out;
}

HybridState assemble_hybrid(RealVector weights,
                            std::vector<std::optional<QuantumState>> blocks,
                            RealVector energies) {
  const int n = static_cast<int>(weights.size());
  if (n == 0) {
    throw ValidationError("assemble_hybrid: empty weight vector");
  }
  if (static_cast<int>(blocks.size()) != n) {
    throw DimensionError("assemble_hybrid: " + std::to_string(blocks.size()) +
                         " blocks for " + std::to_string(n) + " weights");
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (weights(i) < -1e-12) {
      throw ValidationError("assemble_hybrid: weight " + std::to_string(i) +
                            " is negative");
    }
    if (weights(i) < 0.0) {
      weights(i) = 0.0;
    }
    sum += weights(i);
  }
  if (std::abs(sum - 1.0) > kDefaultTol) {
    throw ValidationError("assemble_hybrid: weights sum to " +
                          std::to_string(sum) + ", expected 1");
  }
  weights /= sum;

  int d = 0;
  for (int i = 0; i < n; ++i) {
    auto &b = blocks[static_cast<std::size_t>(i)];
    if (weights(i) <= kWeightFloor) {
      b.reset();
      continue;
    }
    if (!b.has_value()) {
      throw ValidationError("assemble_hybrid: block " + std::to_string(i) +
                            " is absent but its weight is positive");
    }
    if (d == 0) {
      d = b->dimension();
    } else if (b->dimension() != d) {
      throw DimensionError("assemble_hybrid: block " + std::to_string(i) +
                           " has dimension " + std::to_string(b->dimension()) +
                           ", expected " + std::to_string(d));
    }
  }
  if (d == 0) {
    throw ValidationError("assemble_hybrid: all weights vanish");
  }
  if (energies.size() == 0) {
    energies = RealVector::Zero(n);
  } else if (static_cast<int>(energies.size()) != n) {
    throw DimensionError("assemble_hybrid: energies length mismatch");
  }
  return HybridState(std::move(weights), std::move(blocks),
                     std::move(energies), d);
}

HybridState assemble_hybrid(RealVector weights,
                            std::vector<QuantumState> blocks,
                            RealVector energies) {
  std::vector<std::optional<QuantumState>> opt;
  opt.reserve(blocks.size());
  for (auto &b : blocks) {
    opt.emplace_back(std::move(b));
  }
  return assemble_hybrid(std::move(weights), std::move(opt),
                         std::move(energies));
}

HybridState validate_hybrid_matrix(const ComplexMatrix &m, int n, int d,
                                   double tol) {
  if (n < 1 || d < 1 ||
      m.rows() != static_cast<Eigen::Index>(n) * d || m.rows() != m.cols()) {
    throw DimensionError("validate_hybrid_matrix: expected " +
                         std::to_string(n * d) + "-dim square matrix");
  }
  if (!is_hermitian(m, tol)) {
    throw ValidationError("validate_hybrid_matrix: matrix is not Hermitian");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) {
    throw ValidationError("validate_hybrid_matrix: trace is " +
                          std::to_string(m.trace().real()) + ", expected 1");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      double coherence = max_abs(m.block(i * d, j * d, d, d));
      if (coherence > tol) {
        throw ClassicalityError(
            "validate_hybrid_matrix: coherence between pointer states " +
                std::to_string(i) + " and " + std::to_string(j) +
                " with magnitude " + std::to_string(coherence),
            i, j, coherence);
      }
    }
  }
  if (!is_positive_semidefinite(m, tol)) {
    throw ValidationError(
        "validate_hybrid_matrix: matrix is not positive semidefinite");
  }
  RealVector weights(n);
  std::vector<std::optional<QuantumState>> blocks(
      static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ComplexMatrix sub = m.block(i * d, i * d, d, d);
    double p = sub.trace().real();
    weights(i) = p;
    if (p > kWeightFloor) {
      // Symmetrize away roundoff before the per-block validation.
      ComplexMatrix rho = sub / p;
      rho = 0.5 * (rho + rho.adjoint().eval());
      blocks[static_cast<std::size_t>(i)].emplace(std::move(rho), tol);
    }
  }
  return assemble_hybrid(std::move(weights), std::move(blocks));
}

ClassicalState reduce_to_apparatus(const HybridState &state) {
  return ClassicalState(state.weights(), state.energies());
}

QuantumState reduce_to_system(const HybridState &state) {
  const int d = state.system_dim();
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < state.apparatus_dim(); ++i) {
    if (state.block(i).has_value()) {
      rho += state.weights()(i) * state.block(i)->matrix();
    }
  }
  return QuantumState(std::move(rho));
}

} // namespace hqcm
