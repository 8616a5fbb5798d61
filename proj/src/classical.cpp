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

#include "hqcm/classical.hpp"

#include <cmath>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kSumTol = 1e-10;

// Clamp roundoff negatives to zero and renormalize; reject real violations.
RealVector sanitize_probabilities(RealVector p, const char *who) {
  if (p.size() == 0) {
    throw ValidationError(std::string(who) + ": empty probability vector");
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -kClampTol) {
      throw ValidationError(std::string(who) + ": probability " +
                            std::to_string(i) + " is negative (" +
                            std::to_string(p(i)) + ")");
    }
    if (p(i) < 0.0) {
      p(i) = 0.0;
    }
  }
  double sum = p.sum();
  if (std::abs(sum - 1.0) > kSumTol) {
    throw ValidationError(std::string(who) + ": probabilities sum to " +
                          std::to_string(sum) + ", expected 1");
  }
  return p / sum;
}

} // namespace

ClassicalState::ClassicalState(RealVector probabilities, RealVector energies)
    : probs_(sanitize_probabilities(std::move(probabilities),
                                    "ClassicalState")),
      energies_(std::move(energies)) {
  if (energies_.size() != probs_.size()) {
    throw DimensionError("ClassicalState: " + std::to_string(energies_.size()) +
                         " energies for " + std::to_string(probs_.size()) +
                         " pointers");
  }
}

ClassicalState::ClassicalState(RealVector probabilities)
    : ClassicalState(probabilities, RealVector::Zero(probabilities.size())) {}

double ClassicalState::probability(int i) const {
  if (i < 0 || i >= pointer_count()) {
    throw BoundsError("ClassicalState::probability: index " +
                      std::to_string(i) + " out of range");
  }
  return probs_(i);
}

ComplexMatrix ClassicalState::matrix() const {
  return probs_.cast<Complex>().asDiagonal();
}

MarkovGenerator::MarkovGenerator(RealMatrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionError("MarkovGenerator: entries must be square");
  }
  for (Eigen::Index i = 0; i < entries_.cols(); ++i) {
    for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
      if (j != i && entries_(j, i) < 0.0) {
        throw ValidationError("MarkovGenerator: negative rate at (" +
                              std::to_string(j) + "," + std::to_string(i) +
                              ")");
      }
    }
    double col_sum = entries_.col(i).sum();
    if (std::abs(col_sum) > kDefaultTol) {
      throw ValidationError("MarkovGenerator: column " + std::to_string(i) +
                            " sums to " + std::to_string(col_sum) +
                            ", expected 0");
    }
  }
}

TransitionMatrix::TransitionMatrix(RealMatrix entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw DimensionError("TransitionMatrix: entries must be square");
  }
  for (Eigen::Index i = 0; i < entries_.cols(); ++i) {
    for (Eigen::Index j = 0; j < entries_.rows(); ++j) {
      if (entries_(j, i) < -1e-12) {
        throw ValidationError("TransitionMatrix: negative probability at (" +
                              std::to_string(j) + "," + std::to_string(i) +
                              ")");
      }
      if (entries_(j, i) < 0.0) {
        entries_(j, i) = 0.0;
      }
    }
    double col_sum = entries_.col(i).sum();
    if (std::abs(col_sum - 1.0) > kDefaultTol) {
      throw ValidationError("TransitionMatrix: column " + std::to_string(i) +
                            " sums to " + std::to_string(col_sum) +
                            ", expected 1");
    }
  }
}

ComplexMatrix ClassicalObservable::matrix() const {
  return values_.cast<Complex>().asDiagonal();
}

std::vector<ComplexMatrix> kraus_from_transition(const TransitionMatrix &t) {
  const int n = t.dimension();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(n);
  for (int j = 0; j < n; ++j) {
    ComplexMatrix k = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      k(j, i) = std::sqrt(t.entries()(j, i));
    }
    kraus.push_back(std::move(k));
  }
  return kraus;
}

ClassicalState apply_channel(const ClassicalState &state,
                             const TransitionMatrix &t) {
  if (t.dimension() != state.pointer_count()) {
    throw DimensionError("apply_channel: transition matrix dimension " +
                         std::to_string(t.dimension()) + " vs state " +
                         std::to_string(state.pointer_count()));
  }
  RealVector p = t.entries() * state.probabilities();
  return ClassicalState(std::move(p), state.energies());
}

ClassicalState evolve_master(const ClassicalState &state,
                             const MarkovGenerator &gen, double t) {
  if (gen.dimension() != state.pointer_count()) {
    throw DimensionError("evolve_master: generator dimension " +
                         std::to_string(gen.dimension()) + " vs state " +
                         std::to_string(state.pointer_count()));
  }
  if (t < 0.0) {
    throw ValidationError("evolve_master: negative time");
  }
  ComplexMatrix propagator = general_exp(gen.entries().cast<Complex>(), t);
  RealVector p = (propagator * state.probabilities().cast<Complex>()).real();
  return ClassicalState(std::move(p), state.energies());
}

bool detailed_balance_holds(const MarkovGenerator &gen,
                            const ClassicalState &state, double tol) {
  if (gen.dimension() != state.pointer_count()) {
    throw DimensionError("detailed_balance_holds: dimension mismatch");
  }
  const RealMatrix &g = gen.entries();
  const RealVector &p = state.probabilities();
  for (int i = 0; i < gen.dimension(); ++i) {
    for (int j = i + 1; j < gen.dimension(); ++j) {
      if (std::abs(g(j, i) * p(i) - g(i, j) * p(j)) > tol) {
        return false;
      }
    }
  }
  return true;
}

double shannon_information(const ClassicalState &state, double k_const) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < state.probabilities().size(); ++i) {
    double p = state.probabilities()(i);
    if (p > 0.0) {
      s -= p * std::log(p);
    }
  }
  return k_const * std::max(s, 0.0);
}

double classical_expectation(const ClassicalObservable &obs,
                             const ClassicalState &state) {
  if (obs.dimension() != state.pointer_count()) {
    throw DimensionError("classical_expectation: observable dimension " +
                         std::to_string(obs.dimension()) + " vs state " +
                         std::to_string(state.pointer_count()));
  }
  return obs.values().dot(state.probabilities());
}

} // namespace hqcm
