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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hqcm/errors.hpp"
#include "hqcm/quantum.hpp"
#include "test_support.hpp"

using namespace hqcm;

namespace {

const Complex I(0.0, 1.0);

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexVector ket_plus() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

ComplexVector ket_minus() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

} // namespace

TEST_CASE("QuantumState validation") {
  CHECK_NOTHROW(QuantumState(ComplexMatrix::Identity(3, 3) / 3.0));
  // Non-Hermitian.
  ComplexMatrix shift(2, 2);
  shift << 0.5, 1.0, 0.0, 0.5;
  CHECK_THROWS_AS((QuantumState(shift)), ValidationError);
  // Wrong trace.
  CHECK_THROWS_AS(QuantumState(ComplexMatrix::Identity(2, 2)), ValidationError);
  // Negative eigenvalue.
  ComplexMatrix neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS((QuantumState(neg)), ValidationError);

  CHECK(QuantumState::pure(ket_plus()).matrix()(0, 1).real() ==
        doctest::Approx(0.5));
  CHECK_THROWS_AS(QuantumState::pure(2.0 * ket_plus()), ContractError);
  CHECK(QuantumState::maximally_mixed(4).matrix()(0, 0).real() ==
        doctest::Approx(0.25));
}

TEST_CASE("MeasurementBasis validation") {
  CHECK_NOTHROW(MeasurementBasis::computational(5));
  CHECK_NOTHROW(MeasurementBasis::plus_minus());
  ComplexMatrix skew(2, 2);
  skew << 1, 1, 0, 1;
  CHECK_THROWS_AS((MeasurementBasis(skew)), ContractError);
  CHECK(max_abs(MeasurementBasis::plus_minus().vector(1) - ket_minus()) <
        1e-14);
}

TEST_CASE("von_neumann_evolve") {
  testing::Gen gen(21);

  SUBCASE("t = 0 is the identity") {
    QuantumState rho(gen.density(3));
    CHECK(max_abs(von_neumann_evolve(rho, gen.hermitian(3), 0.0).matrix() -
                  rho.matrix()) < 1e-13);
  }

  SUBCASE("eigenprojectors of h are stationary") {
    for (int trial = 0; trial < 20; ++trial) {
      int d = gen.integer(2, 6);
      ComplexMatrix h = gen.hermitian(d);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
      ComplexVector v = es.eigenvectors().col(gen.integer(0, d - 1));
      QuantumState rho = QuantumState::pure(v);
      QuantumState out = von_neumann_evolve(rho, h, gen.real(-10.0, 10.0));
      CHECK(max_abs(out.matrix() - rho.matrix()) < 1e-10);
    }
  }

  SUBCASE("half rotation flips |+> to |->") {
    double g = 1.3;
    double t = std::acos(-1.0) / 2.0 / g; // omega t = pi / 2
    QuantumState out =
        von_neumann_evolve(QuantumState::pure(ket_plus()), g * sigma_z(), t);
    CHECK(max_abs(out.matrix() -
                  QuantumState::pure(ket_minus()).matrix()) < 1e-12);
  }

  SUBCASE("rejects non-Hermitian h") {
    ComplexMatrix shift(2, 2);
    shift << 0, 1, 0, 0;
    CHECK_THROWS_AS(
        von_neumann_evolve(QuantumState::maximally_mixed(2), shift, 1.0),
        ContractError);
  }

  SUBCASE("preserves spectrum and entropy") {
    for (int trial = 0; trial < 20; ++trial) {
      int d = gen.integer(2, 8);
      QuantumState rho(gen.density(d));
      QuantumState out =
          von_neumann_evolve(rho, gen.hermitian(d), gen.real(0.0, 10.0));
      CHECK(std::abs(von_neumann_entropy(out) - von_neumann_entropy(rho)) <
            1e-9);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> e0(rho.matrix());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> e1(out.matrix());
      CHECK(max_abs((e0.eigenvalues() - e1.eigenvalues()).cast<Complex>()) <
            1e-9);
    }
  }

  SUBCASE("composition in time") {
    for (int trial = 0; trial < 20; ++trial) {
      int d = gen.integer(2, 6);
      ComplexMatrix h = gen.hermitian(d);
      QuantumState rho(gen.density(d));
      double s = gen.real(0.0, 5.0), t = gen.real(0.0, 5.0);
      QuantumState two_step =
          von_neumann_evolve(von_neumann_evolve(rho, h, s), h, t);
      QuantumState one_step = von_neumann_evolve(rho, h, s + t);
      CHECK(max_abs(two_step.matrix() - one_step.matrix()) < 1e-9);
    }
  }
}

TEST_CASE("born_probability") {
  MeasurementBasis comp = MeasurementBasis::computational(2);

  CHECK(born_probability(QuantumState::pure(comp.vector(0)), comp, 0) ==
        doctest::Approx(1.0));
  CHECK(born_probability(QuantumState::pure(ket_plus()), comp, 0) ==
        doctest::Approx(0.5));

  SUBCASE("mixture weights in the plus/minus basis") {
    double wt = std::acos(-1.0) / 6.0; // omega t = pi / 6
    double c2 = std::cos(wt) * std::cos(wt);
    ComplexMatrix rho =
        c2 * QuantumState::pure(ket_plus()).matrix() +
        (1.0 - c2) * QuantumState::pure(ket_minus()).matrix();
    QuantumState state(rho);
    MeasurementBasis pm = MeasurementBasis::plus_minus();
    CHECK(born_probability(state, pm, 1) ==
          doctest::Approx(1.0 - c2).epsilon(1e-12));
  }

  SUBCASE("bounds error") {
    CHECK_THROWS_AS(
        born_probability(QuantumState::maximally_mixed(2), comp, 2),
        BoundsError);
  }

  SUBCASE("probabilities sum to one") {
    testing::Gen gen(22);
    for (int trial = 0; trial < 30; ++trial) {
      int d = gen.integer(2, 8);
      QuantumState rho(gen.density(d));
      MeasurementBasis basis = MeasurementBasis::computational(d);
      double total = 0.0;
      for (int m = 0; m < d; ++m) {
        double p = born_probability(rho, basis, m);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        total += p;
      }
      CHECK(std::abs(total - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("reduce_state") {
  MeasurementBasis comp = MeasurementBasis::computational(2);
  testing::Gen gen(23);

  SUBCASE("collapses to the basis projector") {
    QuantumState rho(gen.density(2));
    QuantumState out = reduce_state(rho, comp, 1);
    CHECK(max_abs(out.matrix() -
                  QuantumState::pure(comp.vector(1)).matrix()) < 1e-13);
    CHECK(von_neumann_entropy(out) < 1e-12);
  }

  SUBCASE("idempotence and repetition consistency") {
    QuantumState rho(gen.density(3));
    MeasurementBasis basis = MeasurementBasis::computational(3);
    QuantumState once = reduce_state(rho, basis, 2);
    QuantumState twice = reduce_state(once, basis, 2);
    CHECK(max_abs(once.matrix() - twice.matrix()) == 0.0);
    CHECK(born_probability(once, basis, 2) == doctest::Approx(1.0));
  }

  SUBCASE("impossible outcome") {
    CHECK_THROWS_AS(
        reduce_state(QuantumState::pure(comp.vector(0)), comp, 1),
        ImpossibleOutcomeError);
  }
}

TEST_CASE("von_neumann_entropy") {
  testing::Gen gen(24);

  CHECK(von_neumann_entropy(QuantumState::pure(gen.unit_vector(4))) < 1e-12);
  CHECK(von_neumann_entropy(QuantumState::maximally_mixed(2)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  SUBCASE("binary mixture closed form") {
    double wt = std::acos(-1.0) / 6.0;
    double c2 = std::cos(wt) * std::cos(wt); // 0.75
    ComplexMatrix rho(2, 2);
    rho << c2, 0.0, 0.0, 1.0 - c2;
    double expected = -(0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(von_neumann_entropy(QuantumState(rho)) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(von_neumann_entropy(QuantumState(rho), 2.0) ==
          doctest::Approx(2.0 * expected).epsilon(1e-12));
  }

  SUBCASE("bounded by ln d") {
    for (int trial = 0; trial < 30; ++trial) {
      int d = gen.integer(2, 8);
      double s = von_neumann_entropy(QuantumState(gen.density(d)));
      CHECK(s >= 0.0);
      CHECK(s <= std::log(static_cast<double>(d)) + 1e-12);
    }
  }
}
