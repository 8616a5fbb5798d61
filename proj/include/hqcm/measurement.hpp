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

#ifndef HQCM_MEASUREMENT_HPP
#define HQCM_MEASUREMENT_HPP

#include <optional>
#include <vector>

#include "hqcm/hybrid.hpp"
#include "hqcm/rng.hpp"

namespace hqcm {

// The unique joint Hamiltonian form that keeps the apparatus classical:
//   H = sum_i E_i |E_i><E_i| x 1  +  1 x H_S  +  sum_i |E_i><E_i| x V_i.
// Block i of a hybrid state evolves under the effective Hamiltonian
// H_S + V_i (the E_i phases cancel in the conjugation).
class MeasurementHamiltonian {
public:
  MeasurementHamiltonian(RealVector apparatus_energies,
                         ComplexMatrix system_hamiltonian,
                         std::vector<ComplexMatrix> potentials,
                         double tol = kDefaultTol);

  int apparatus_dim() const {
    return static_cast<int>(apparatus_energies_.size());
  }
  int system_dim() const {
    return static_cast<int>(system_hamiltonian_.rows());
  }
  const RealVector &apparatus_energies() const { return apparatus_energies_; }
  const ComplexMatrix &system_hamiltonian() const {
    return system_hamiltonian_;
  }
  const ComplexMatrix &potential(int i) const;

  // H_S + V_i, the per-block generator.
  ComplexMatrix effective_hamiltonian(int i) const;

  // The full (n*d)x(n*d) matrix.
  ComplexMatrix materialize() const;

private:
  RealVector apparatus_energies_;
  ComplexMatrix system_hamiltonian_;
  std::vector<ComplexMatrix> potentials_;
};

// Unconstrained joint Hamiltonian sum_ij |E_i><E_j| x W_ij; Hermiticity of
// the whole requires W_ji = W_ij^dag.
class GeneralHamiltonian {
public:
  // blocks is a row-major n*n list of d x d matrices.
  GeneralHamiltonian(int n, int d, std::vector<ComplexMatrix> blocks,
                     double tol = kDefaultTol);

  int apparatus_dim() const { return n_; }
  int system_dim() const { return d_; }
  const ComplexMatrix &block(int i, int j) const;
  ComplexMatrix materialize() const;

private:
  int n_;
  int d_;
  std::vector<ComplexMatrix> blocks_;
};

// Classical, quantum, and joint information of a hybrid state, each in
// units of K nats.
struct InformationLedger {
  double i_apparatus;
  double i_system;
  double i_total;
  double k_const;
};

// Outcome of a full registration + Born reduction.
struct CompletionEvent {
  int registered_pointer;
  int reduced_outcome;
  double pointer_prob;
  double outcome_prob;
  HybridState post_state;
};

struct ClassicalityVerdict {
  bool classical;
  // Witness of the first offending off-diagonal pair, when violating.
  int witness_row = -1;
  int witness_col = -1;
  ComplexMatrix witness_block;
  // Decomposition of the diagonal blocks, when classical.
  std::optional<MeasurementHamiltonian> decomposition;
};

enum class ContextKind { Essential, NonEssential };

MeasurementHamiltonian
build_measurement_hamiltonian(RealVector energies, ComplexMatrix h_s,
                              std::vector<ComplexMatrix> potentials);

// Classical iff every off-diagonal block of h vanishes within tol. A
// classical verdict carries the decomposition W_ii = E_i 1 + H_S + V_i; the
// split is not unique, so H_S may be declared by the caller, and otherwise
// defaults to the mean of the diagonal blocks with V_i the traceless
// remainder. Dynamics depend only on H_S + V_i, so any split is equivalent.
ClassicalityVerdict
check_classicality(const GeneralHamiltonian &h, double tol = kDefaultTol,
                   const std::optional<ComplexMatrix> &declared_h_s = {});

// First-order coherence (i t / hbar) <phi| W_kl |phi> generated between
// pointer states k and l by an off-diagonal coupling block.
Complex coherence_growth_prediction(const ComplexMatrix &w_kl,
                                    const ComplexVector &phi, double t,
                                    double hbar = 1.0);

// Blockwise unitary evolution: weights fixed, block i conjugated by
// exp(-i (H_S + V_i) t / hbar).
HybridState evolve_hybrid(const HybridState &state,
                          const MeasurementHamiltonian &h, double t,
                          double hbar = 1.0);

// Sample a pointer l with probability p_l; the post-state has weight 1 on l
// with the conditional block untouched.
std::pair<int, HybridState> register_pointer(const HybridState &state,
                                             RandomStream &rng);

// Deterministic variant: force pointer l. Throws ImpossibleOutcomeError for
// zero-weight pointers.
HybridState register_outcome(const HybridState &state, int l);

// Registration (if the state is not yet definite) followed by a Born-rule
// reduction of the revealed block in the given basis.
CompletionEvent complete_measurement(const HybridState &state,
                                     const MeasurementBasis &basis,
                                     RandomStream &rng);

// Deterministic variant with explicit pointer and outcome indices.
CompletionEvent complete_outcome(const HybridState &state,
                                 const MeasurementBasis &basis, int l, int m);

// Essential iff 1 x observable commutes with the materialized Hamiltonian;
// knowledge acquired in an essential context persists under evolution.
ContextKind classify_context(const ComplexMatrix &observable,
                             const MeasurementHamiltonian &h,
                             double tol = kDefaultTol);

// I_A, I_S and I_AS of a hybrid state. The joint spectrum is the union over
// pointers of p_i * spec(rho_S^(i)).
InformationLedger information_ledger(const HybridState &state,
                                     double k_const = 1.0);

} // namespace hqcm

#endif
