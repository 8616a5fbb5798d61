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
#include "hqcm/propositions.hpp"
#include "test_support.hpp"

using namespace hqcm;

namespace {

Proposition proj_zero() {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  p(0, 0) = 1.0;
  return Proposition(p);
}

Proposition proj_plus() {
  ComplexMatrix p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  return Proposition(p);
}

// All diagonal subset projectors over n pointer states.
std::vector<Proposition> subset_family(int n) {
  std::vector<Proposition> props;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::set<int> subset;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) {
        subset.insert(i);
      }
    }
    props.push_back(from_pointer_subset(n, subset));
  }
  return props;
}

} // namespace

TEST_CASE("Proposition validation") {
  CHECK_NOTHROW(Proposition(ComplexMatrix::Identity(3, 3)));
  CHECK_NOTHROW(Proposition(ComplexMatrix::Zero(3, 3)));
  CHECK_NOTHROW(proj_plus());
  // Hermitian but not idempotent.
  CHECK_THROWS_AS(Proposition(0.5 * ComplexMatrix::Identity(2, 2)),
                  ValidationError);
  // Not Hermitian.
  ComplexMatrix shift(2, 2);
  shift << 0, 1, 0, 0;
  CHECK_THROWS_AS((Proposition(shift)), ValidationError);

  CHECK(max_abs(Proposition::always_true(2).projector() -
                ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(Proposition::always_false(2).projector()) == 0.0);
}

TEST_CASE("from_pointer_subset") {
  CHECK(max_abs(from_pointer_subset(3, {0, 1, 2}).projector() -
                ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs(from_pointer_subset(3, {}).projector()) == 0.0);
  Proposition some = from_pointer_subset(3, {1});
  CHECK(some.projector()(1, 1) == Complex(1.0, 0.0));
  CHECK(some.projector()(0, 0) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(from_pointer_subset(2, {2}), BoundsError);
}

TEST_CASE("compatible") {
  Proposition a = from_pointer_subset(2, {0});
  Proposition b = from_pointer_subset(2, {1});
  CHECK(compatible(a, b));
  CHECK(compatible(a, Proposition::always_true(2)));
  CHECK_FALSE(compatible(proj_zero(), proj_plus()));
  CHECK_THROWS_AS(compatible(a, Proposition::always_true(3)), DimensionError);
}

TEST_CASE("conjunction and disjunction") {
  Proposition alive = from_pointer_subset(2, {0});
  Proposition dead = from_pointer_subset(2, {1});

  CHECK(max_abs(conjunction(alive, dead).projector()) == 0.0);
  CHECK(max_abs(disjunction(alive, dead).projector() -
                ComplexMatrix::Identity(2, 2)) == 0.0);

  CHECK(max_abs(conjunction(alive, alive).projector() - alive.projector()) ==
        0.0);
  CHECK(max_abs(conjunction(alive, Proposition::always_true(2)).projector() -
                alive.projector()) == 0.0);
  CHECK(max_abs(disjunction(alive, Proposition::always_false(2)).projector() -
                alive.projector()) == 0.0);
  CHECK(max_abs(disjunction(alive, alive).projector() - alive.projector()) ==
        0.0);

  CHECK_THROWS_AS(conjunction(proj_zero(), proj_plus()), ValidationError);
  CHECK_THROWS_AS(disjunction(proj_zero(), proj_plus()), ValidationError);

  SUBCASE("de Morgan duality on commuting pairs") {
    testing::Gen gen(61);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(2, 6);
      std::set<int> sa, sb;
      for (int i = 0; i < n; ++i) {
        if (gen.real(0.0, 1.0) < 0.5) {
          sa.insert(i);
        }
        if (gen.real(0.0, 1.0) < 0.5) {
          sb.insert(i);
        }
      }
      Proposition p = from_pointer_subset(n, sa);
      Proposition q = from_pointer_subset(n, sb);
      ComplexMatrix lhs = complement(disjunction(p, q)).projector();
      ComplexMatrix rhs =
          conjunction(complement(p), complement(q)).projector();
      CHECK(max_abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("complement") {
  Proposition p = from_pointer_subset(3, {0, 2});
  CHECK(max_abs(complement(complement(p)).projector() - p.projector()) ==
        0.0);
  CHECK(max_abs(conjunction(p, complement(p)).projector()) < 1e-12);
  CHECK(max_abs(disjunction(p, complement(p)).projector() -
                ComplexMatrix::Identity(3, 3)) < 1e-12);
}

TEST_CASE("truth_probability") {
  MeasurementBasis comp = MeasurementBasis::computational(2);
  QuantumState up = QuantumState::pure(comp.vector(0));
  Proposition alive = from_pointer_subset(2, {0});

  CHECK(truth_probability(alive, up) == doctest::Approx(1.0));
  CHECK(truth_probability(Proposition::always_false(2), up) == 0.0);

  // Even mixture of the two pointer-aligned states.
  ComplexMatrix rho_cat(2, 2);
  rho_cat << 0.5, 0, 0, 0.5;
  CHECK(truth_probability(alive, QuantumState(rho_cat)) ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(truth_probability(alive, QuantumState::maximally_mixed(3)),
                  DimensionError);

  SUBCASE("unit vectors in the range are certain") {
    testing::Gen gen(62);
    for (int trial = 0; trial < 20; ++trial) {
      int n = gen.integer(2, 6);
      std::set<int> subset;
      for (int i = 0; i < n; ++i) {
        if (gen.real(0.0, 1.0) < 0.6) {
          subset.insert(i);
        }
      }
      if (subset.empty()) {
        subset.insert(0);
      }
      Proposition p = from_pointer_subset(n, subset);
      ComplexVector v = ComplexVector::Zero(n);
      for (int i : subset) {
        v(i) = gen.cplx();
      }
      v /= v.norm();
      CHECK(truth_probability(p, QuantumState::pure(v)) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("boolean_sublattice_check") {
  for (int n = 1; n <= 6; ++n) {
    CHECK(boolean_sublattice_check(subset_family(n)));
  }

  CHECK(boolean_sublattice_check(
      {Proposition::always_false(2), Proposition::always_true(2)}));

  CHECK_FALSE(boolean_sublattice_check({proj_zero(), proj_plus()}));

  // Commuting but not closed under complement.
  CHECK_FALSE(boolean_sublattice_check(
      {from_pointer_subset(3, {0}), from_pointer_subset(3, {1})}));

  SUBCASE("distributivity on sampled triples from a passing family") {
    testing::Gen gen(63);
    auto family = subset_family(4);
    REQUIRE(boolean_sublattice_check(family));
    for (int trial = 0; trial < 50; ++trial) {
      const Proposition &p =
          family[static_cast<std::size_t>(gen.integer(0, 15))];
      const Proposition &q =
          family[static_cast<std::size_t>(gen.integer(0, 15))];
      const Proposition &r =
          family[static_cast<std::size_t>(gen.integer(0, 15))];
      ComplexMatrix lhs = conjunction(p, disjunction(q, r)).projector();
      ComplexMatrix rhs =
          disjunction(conjunction(p, q), conjunction(p, r)).projector();
      CHECK(max_abs(lhs - rhs) < 1e-10);
    }
  }
}
