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

#include "hqcm/propositions.hpp"

#include <algorithm>
#include <cmath>

#include "hqcm/errors.hpp"

namespace hqcm {

Proposition::Proposition(ComplexMatrix projector, double tol)
    : p_(std::move(projector)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0) {
    throw DimensionError("Proposition: projector must be square");
  }
  if (!is_hermitian(p_, tol)) {
    throw ValidationError("Proposition: projector is not Hermitian");
  }
  if (max_abs(p_ * p_ - p_) > tol) {
    throw ValidationError("Proposition: projector is not idempotent");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p_, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (std::min(std::abs(lam), std::abs(lam - 1.0)) > 1e-9) {
      throw ValidationError("Proposition: eigenvalue " + std::to_string(lam) +
                            " is not in {0, 1}");
    }
  }
}

Proposition Proposition::always_true(int dimension) {
  return Proposition(ComplexMatrix::Identity(dimension, dimension));
}

Proposition Proposition::always_false(int dimension) {
  return Proposition(ComplexMatrix::Zero(dimension, dimension));
}

Proposition from_pointer_subset(int n, const std::set<int> &subset) {
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int i : subset) {
    if (i < 0 || i >= n) {
      throw BoundsError("from_pointer_subset: index " + std::to_string(i) +
                        " out of range for " + std::to_string(n) +
                        " pointers");
    }
    p(i, i) = 1.0;
  }
  return Proposition(std::move(p));
}

bool compatible(const Proposition &p, const Proposition &q, double tol) {
  if (p.dimension() != q.dimension()) {
    throw DimensionError("compatible: proposition dimensions differ");
  }
  return max_abs(p.projector() * q.projector() -
                 q.projector() * p.projector()) <= tol;
}

namespace {

void require_compatible(const Proposition &p, const Proposition &q,
                        double tol, const char *op) {
  if (!compatible(p, q, tol)) {
    throw ValidationError(std::string(op) +
                          ": propositions are incompatible (projectors do "
                          "not commute); only the Boolean core is supported");
  }
}

} // namespace

Proposition conjunction(const Proposition &p, const Proposition &q,
                        double tol) {
  require_compatible(p, q, tol, "conjunction");
  return Proposition(p.projector() * q.projector());
}

Proposition disjunction(const Proposition &p, const Proposition &q,
                        double tol) {
  require_compatible(p, q, tol, "disjunction");
  return Proposition(p.projector() + q.projector() -
                     p.projector() * q.projector());
}

Proposition complement(const Proposition &p) {
  return Proposition(
      ComplexMatrix::Identity(p.dimension(), p.dimension()) - p.projector());
}

double truth_probability(const Proposition &p, const QuantumState &state) {
  if (p.dimension() != state.dimension()) {
    throw DimensionError("truth_probability: dimension mismatch");
  }
  double value = (p.projector() * state.matrix()).trace().real();
  return std::clamp(value, 0.0, 1.0);
}

namespace {

bool contains(const std::vector<Proposition> &props, const ComplexMatrix &m,
              double tol) {
  for (const auto &p : props) {
    if (max_abs(p.projector() - m) <= tol) {
      return true;
    }
  }
  return false;
}

} // namespace

bool boolean_sublattice_check(const std::vector<Proposition> &props,
                              double tol) {
  if (props.empty()) {
    return true;
  }
  const int d = props.front().dimension();
  for (const auto &p : props) {
    if (p.dimension() != d) {
      return false;
    }
  }
  for (std::size_t a = 0; a < props.size(); ++a) {
    if (!contains(props, complement(props[a]).projector(), tol)) {
      return false;
    }
    for (std::size_t b = 0; b < props.size(); ++b) {
      if (!compatible(props[a], props[b], tol)) {
        return false;
      }
      if (!contains(props, conjunction(props[a], props[b], tol).projector(),
                    tol) ||
          !contains(props, disjunction(props[a], props[b], tol).projector(),
                    tol)) {
        return false;
      }
    }
  }
  // Distributivity spot-check on a strided sample of triples.
  const std::size_t n = props.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 4);
  for (std::size_t a = 0; a < n; a += stride) {
    for (std::size_t b = 0; b < n; b += stride) {
      for (std::size_t c = 0; c < n; c += stride) {
        ComplexMatrix lhs =
            conjunction(props[a], disjunction(props[b], props[c], tol), tol)
                .projector();
        ComplexMatrix rhs =
            disjunction(conjunction(props[a], props[b], tol),
                        conjunction(props[a], props[c], tol), tol)
                .projector();
        if (max_abs(lhs - rhs) > tol) {
          return false;
        }
      }
    }
  }
  return true;
}

} // namespace hqcm
