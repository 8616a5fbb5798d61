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

#include "hqcm/measurement.hpp"

#include <cmath>

#include "hqcm/errors.hpp"

namespace hqcm {

MeasurementHamiltonian::MeasurementHamiltonian(
    RealVector apparatus_energies, ComplexMatrix system_hamiltonian,
    std::vector<ComplexMatrix> potentials, double tol)
    : apparatus_energies_(std::move(apparatus_energies)),
      system_hamiltonian_(std::move(system_hamiltonian)),
      potentials_(std::move(potentials)) {
  const int n = static_cast<int>(apparatus_energies_.size());
  if (n == 0) {
    throw DimensionError("MeasurementHamiltonian: no apparatus energies");
  }
  if (static_cast<int>(potentials_.size()) != n) {
    throw DimensionError("MeasurementHamiltonian: " +
                         std::to_string(potentials_.size()) +
                         " potentials for " + std::to_string(n) +
                         " pointers");
  }
  if (!is_hermitian(system_hamiltonian_, tol)) {
    throw ContractError("MeasurementHamiltonian: H_S is not Hermitian");
  }
  const int d = static_cast<int>(system_hamiltonian_.rows());
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix &v = potentials_[static_cast<std::size_t>(i)];
    if (v.rows() != d || v.cols() != d) {
      throw DimensionError("MeasurementHamiltonian: potential " +
                           std::to_string(i) + " dimension mismatch");
    }
    if (!is_hermitian(v, tol)) {
      throw ContractError("MeasurementHamiltonian: potential " +
                          std::to_string(i) + " is not Hermitian");
    }
  }
}

const ComplexMatrix &MeasurementHamiltonian::potential(int i) const {
  if (i < 0 || i >= apparatus_dim()) {
    throw BoundsError("MeasurementHamiltonian::potential: index " +
                      std::to_string(i) + " out of range");
  }
  return potentials_[static_cast<std::size_t>(i)];
}

ComplexMatrix MeasurementHamiltonian::effective_hamiltonian(int i) const {
  return system_hamiltonian_ + potential(i);
}

ComplexMatrix MeasurementHamiltonian::materialize() const {
  const int n = apparatus_dim();
  const int d = system_dim();
  ComplexMatrix out = ComplexMatrix::Zero(n * d, n * d);
  ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < n; ++i) {
    out.block(i * d, i * d, d, d) = apparatus_energies_(i) * eye +
                                    system_hamiltonian_ +
                                    potentials_[static_cast<std::size_t>(i)];
  }
  return out;
}

GeneralHamiltonian::GeneralHamiltonian(int n, int d,
                                       std::vector<ComplexMatrix> blocks,
                                       double tol)
    : n_(n), d_(d), blocks_(std::move(blocks)) {
  if (n < 1 || d < 1) {
    throw DimensionError("GeneralHamiltonian: dimensions must be positive");
  }
  if (blocks_.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("GeneralHamiltonian: expected " +
                         std::to_string(n * n) + " blocks, got " +
                         std::to_string(blocks_.size()));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix &w = block(i, j);
      if (w.rows() != d || w.cols() != d) {
        throw DimensionError("GeneralHamiltonian: block (" +
                             std::to_string(i) + "," + std::to_string(j) +
                             ") dimension mismatch");
      }
      if (j >= i && max_abs(w - block(j, i).adjoint()) > tol) {
        throw ContractError("GeneralHamiltonian: W(" + std::to_string(j) +
                            "," + std::to_string(i) + ") != W(" +
                            std::to_string(i) + "," + std::to_string(j) +
                            ")^dag; the Hamiltonian is not Hermitian");
      }
    }
  }
}

const ComplexMatrix &GeneralHamiltonian::block(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw BoundsError("GeneralHamiltonian::block: indices out of range");
  }
  return blocks_[static_cast<std::size_t>(i) * n_ + j];
}

ComplexMatrix GeneralHamiltonian::materialize() const {
  ComplexMatrix out = ComplexMatrix::Zero(n_ * d_, n_ * d_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      out.block(i * d_, j * d_, d_, d_) = block(i, j);
    }
  }
  return out;
}

MeasurementHamiltonian
build_measurement_hamiltonian(RealVector energies, ComplexMatrix h_s,
                              std::vector<ComplexMatrix> potentials) {
  return MeasurementHamiltonian(std::move(energies), std::move(h_s),
                                std::move(potentials));
}

ClassicalityVerdict
check_classicality(const GeneralHamiltonian &h, double tol,
                   const std::optional<ComplexMatrix> &declared_h_s) {
  const int n = h.apparatus_dim();
  const int d = h.system_dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      double mag = max_abs(h.block(i, j));
      if (mag > tol) {
        ClassicalityVerdict v;
        v.classical = false;
        v.witness_row = i;
        v.witness_col = j;
        v.witness_block = h.block(i, j);
        return v;
      }
    }
  }
  ComplexMatrix h_s;
  if (declared_h_s.has_value()) {
    if (declared_h_s->rows() != d || declared_h_s->cols() != d) {
      throw DimensionError("check_classicality: declared H_S dimension "
                           "mismatch");
    }
    h_s = *declared_h_s;
  } else {
    h_s = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      h_s += h.block(i, i);
    }
    h_s /= static_cast<double>(n);
    h_s = 0.5 * (h_s + h_s.adjoint().eval());
  }
  RealVector energies(n);
  std::vector<ComplexMatrix> potentials;
  potentials.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ComplexMatrix rest = h.block(i, i) - h_s;
    rest = 0.5 * (rest + rest.adjoint().eval());
    energies(i) = rest.trace().real() / d;
    potentials.push_back(rest - energies(i) *
                                    ComplexMatrix::Identity(d, d));
  }
  ClassicalityVerdict v;
  v.classical = true;
  v.decomposition.emplace(std::move(energies), std::move(h_s),
                          std::move(potentials));
  return v;
}

Complex coherence_growth_prediction(const ComplexMatrix &w_kl,
                                    const ComplexVector &phi, double t,
                                    double hbar) {
  if (w_kl.rows() != w_kl.cols() || phi.size() != w_kl.rows()) {
    throw DimensionError("coherence_growth_prediction: dimension mismatch");
  }
  if (std::abs(phi.norm() - 1.0) > kDefaultTol) {
    throw ContractError("coherence_growth_prediction: phi is not normalized");
  }
  Complex expectation = (phi.adjoint() * w_kl * phi)(0);
  return Complex(0.0, t / hbar) * expectation;
}

HybridState evolve_hybrid(const HybridState &state,
                          const MeasurementHamiltonian &h, double t,
                          double hbar) {
  if (h.apparatus_dim() != state.apparatus_dim() ||
      h.system_dim() != state.system_dim()) {
    throw DimensionError("evolve_hybrid: Hamiltonian dimensions (" +
                         std::to_string(h.apparatus_dim()) + "," +
                         std::to_string(h.system_dim()) + ") vs state (" +
                         std::to_string(state.apparatus_dim()) + "," +
                         std::to_string(state.system_dim()) + ")");
  }
  std::vector<std::optional<QuantumState>> blocks;
  blocks.reserve(static_cast<std::size_t>(state.apparatus_dim()));
  for (int i = 0; i < state.apparatus_dim(); ++i) {
    if (state.block(i).has_value()) {
      blocks.emplace_back(von_neumann_evolve(*state.block(i),
                                             h.effective_hamiltonian(i), t,
                                             hbar));
    } else {
      blocks.emplace_back(std::nullopt);
    }
  }
  return assemble_hybrid(state.weights(), std::move(blocks),
                         state.energies());
}

namespace {

HybridState collapse_to_pointer(const HybridState &state, int l) {
  RealVector weights = RealVector::Zero(state.apparatus_dim());
  weights(l) = 1.0;
  std::vector<std::optional<QuantumState>> blocks(
      static_cast<std::size_t>(state.apparatus_dim()));
  blocks[static_cast<std::size_t>(l)] = state.conditional_state(l);
  return assemble_hybrid(std::move(weights), std::move(blocks),
                         state.energies());
}

} // namespace

std::pair<int, HybridState> register_pointer(const HybridState &state,
                                             RandomStream &rng) {
  std::span<const double> weights(state.weights().data(),
                                  static_cast<std::size_t>(
                                      state.weights().size()));
  int l = rng.sample(weights);
  return {l, collapse_to_pointer(state, l)};
}

HybridState register_outcome(const HybridState &state, int l) {
  if (l < 0 || l >= state.apparatus_dim()) {
    throw BoundsError("register_outcome: pointer " + std::to_string(l) +
                      " out of range");
  }
  if (state.pointer_probability(l) <= kWeightFloor) {
    throw ImpossibleOutcomeError("register_outcome: pointer " +
                                 std::to_string(l) + " has zero weight");
  }
  return collapse_to_pointer(state, l);
}

namespace {

CompletionEvent finish_completion(const HybridState &state, int l,
                                  double p_l, const MeasurementBasis &basis,
                                  int m) {
  const QuantumState &revealed = state.conditional_state(l);
  double pi = born_probability(revealed, basis, m);
  QuantumState reduced = reduce_state(revealed, basis, m);
  RealVector weights = RealVector::Zero(state.apparatus_dim());
  weights(l) = 1.0;
  std::vector<std::optional<QuantumState>> blocks(
      static_cast<std::size_t>(state.apparatus_dim()));
  blocks[static_cast<std::size_t>(l)] = std::move(reduced);
  HybridState post = assemble_hybrid(std::move(weights), std::move(blocks),
                                     state.energies());
  return CompletionEvent{l, m, p_l, pi, std::move(post)};
}

} // namespace

CompletionEvent complete_measurement(const HybridState &state,
                                     const MeasurementBasis &basis,
                                     RandomStream &rng) {
  if (basis.dimension() != state.system_dim()) {
    throw DimensionError("complete_measurement: basis dimension mismatch");
  }
  std::span<const double> weights(state.weights().data(),
                                  static_cast<std::size_t>(
                                      state.weights().size()));
  int l = rng.sample(weights);
  double p_l = state.pointer_probability(l);
  const QuantumState &revealed = state.conditional_state(l);
  std::vector<double> born(static_cast<std::size_t>(basis.dimension()));
  for (int m = 0; m < basis.dimension(); ++m) {
    born[static_cast<std::size_t>(m)] = born_probability(revealed, basis, m);
  }
  int m = rng.sample(born);
  return finish_completion(state, l, p_l, basis, m);
}

CompletionEvent complete_outcome(const HybridState &state,
                                 const MeasurementBasis &basis, int l,
                                 int m) {
  if (basis.dimension() != state.system_dim()) {
    throw DimensionError("complete_outcome: basis dimension mismatch");
  }
  if (l < 0 || l >= state.apparatus_dim()) {
    throw BoundsError("complete_outcome: pointer index out of range");
  }
  double p_l = state.pointer_probability(l);
  if (p_l <= kWeightFloor) {
    throw ImpossibleOutcomeError("complete_outcome: pointer " +
                                 std::to_string(l) + " has zero weight");
  }
  return finish_completion(state, l, p_l, basis, m);
}

ContextKind classify_context(const ComplexMatrix &observable,
                             const MeasurementHamiltonian &h, double tol) {
  const int d = h.system_dim();
  if (observable.rows() != d || observable.cols() != d) {
    throw DimensionError("classify_context: observable dimension mismatch");
  }
  if (!is_hermitian(observable, tol)) {
    throw ContractError("classify_context: observable is not Hermitian");
  }
  ComplexMatrix lifted =
      kron(ComplexMatrix::Identity(h.apparatus_dim(), h.apparatus_dim()),
           observable);
  ComplexMatrix joint = h.materialize();
  ComplexMatrix commutator = lifted * joint - joint * lifted;
  return max_abs(commutator) <= tol ? ContextKind::Essential
                                    : ContextKind::NonEssential;
}

InformationLedger information_ledger(const HybridState &state,
                                     double k_const) {
  double i_a = shannon_information(reduce_to_apparatus(state), k_const);
  double i_s = von_neumann_entropy(reduce_to_system(state), k_const);
  // Joint spectrum: union over pointers of p_i * spec(rho_S^(i)).
  double i_as = 0.0;
  for (int i = 0; i < state.apparatus_dim(); ++i) {
    double p = state.weights()(i);
    if (p <= kWeightFloor || !state.block(i).has_value()) {
      continue;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        state.block(i)->matrix(), Eigen::EigenvaluesOnly);
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      double lam = p * es.eigenvalues()(j);
      if (lam > 1e-14) {
        i_as -= lam * std::log(lam);
      }
    }
  }
  return InformationLedger{i_a, i_s, k_const * std::max(i_as, 0.0), k_const};
}

} // namespace hqcm
