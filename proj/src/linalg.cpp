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

#include "hqcm/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include "hqcm/errors.hpp"

namespace hqcm {

namespace {

void require_square(const ComplexMatrix &m, const char *op) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(op) + ": matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

} // namespace

ComplexMatrix dagger(const ComplexMatrix &m) { return m.adjoint(); }

bool is_hermitian(const ComplexMatrix &m, double tol) {
  require_square(m, "is_hermitian");
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_positive_semidefinite(const ComplexMatrix &m, double tol) {
  if (!is_hermitian(m, tol)) {
    throw ContractError("is_positive_semidefinite: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m,
                                                  Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

Complex trace(const ComplexMatrix &m) {
  require_square(m, "trace");
  return m.trace();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_system(const ComplexMatrix &m, int dim_a,
                                   int dim_s) {
  if (m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_s) {
    throw DimensionError("partial_trace_system: expected " +
                         std::to_string(dim_a * dim_s) + "-dim square matrix");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
  for (int i = 0; i < dim_a; ++i) {
    for (int j = 0; j < dim_a; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < dim_s; ++k) {
        s += m(i * dim_s + k, j * dim_s + k);
      }
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix partial_trace_apparatus(const ComplexMatrix &m, int dim_a,
                                      int dim_s) {
  if (m.rows() != m.cols() ||
      m.rows() != static_cast<Eigen::Index>(dim_a) * dim_s) {
    throw DimensionError("partial_trace_apparatus: expected " +
                         std::to_string(dim_a * dim_s) + "-dim square matrix");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_s, dim_s);
  for (int k = 0; k < dim_s; ++k) {
    for (int l = 0; l < dim_s; ++l) {
      Complex s = 0.0;
      for (int i = 0; i < dim_a; ++i) {
        s += m(i * dim_s + k, i * dim_s + l);
      }
      out(k, l) = s;
    }
  }
  return out;
}

ComplexMatrix unitary_exp(const ComplexMatrix &h, double t, double hbar,
                          double tol) {
  if (!is_hermitian(h, tol)) {
    throw ContractError("unitary_exp: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const RealVector &lam = es.eigenvalues();
  ComplexVector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -lam(i) * t / hbar));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix general_exp(const ComplexMatrix &g, double t) {
  require_square(g, "general_exp");
  ComplexMatrix gt = g * t;
  return gt.exp();
}

double max_abs(const ComplexMatrix &m) {
  if (m.size() == 0) {
    return 0.0;
  }
  return m.cwiseAbs().maxCoeff();
}

} // namespace hqcm
