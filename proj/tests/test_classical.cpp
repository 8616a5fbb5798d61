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

#include "hqcm/classical.hpp"
#include "hqcm/errors.hpp"
#include "test_support.hpp"

using namespace hqcm;

namespace {

RealVector vec2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

} // namespace

TEST_CASE("ClassicalState validation") {
  CHECK_NOTHROW(ClassicalState(vec2(0.3, 0.7)));
  CHECK_THROWS_AS(ClassicalState(vec2(0.5, 0.6)), ValidationError);
  CHECK_THROWS_AS(ClassicalState(vec2(1.2, -0.2)), ValidationError);
  // Roundoff negatives are clamped and renormalized.
  ClassicalState s(vec2(1.0 + 5e-13, -5e-13));
  CHECK(s.probability(1) == 0.0);
  CHECK(s.probabilities().sum() == doctest::Approx(1.0).epsilon(1e-14));
  // Diagonal matrix view.
  ClassicalState t(vec2(0.3, 0.7));
  CHECK(max_abs(t.matrix() - t.probabilities().cast<Complex>().asDiagonal()
                                 .toDenseMatrix()) == 0.0);
}

TEST_CASE("MarkovGenerator and TransitionMatrix validation") {
  RealMatrix g(2, 2);
  g << -1.0, 0.0, 1.0, 0.0;
  CHECK_NOTHROW((MarkovGenerator(g)));

  RealMatrix bad = g;
  bad(1, 0) = -1.0;
  CHECK_THROWS_AS((MarkovGenerator(bad)), ValidationError);
  bad = g;
  bad(0, 0) = -0.5;
  CHECK_THROWS_AS((MarkovGenerator(bad)), ValidationError);

  RealMatrix t(2, 2);
  t << 0.0, 1.0, 1.0, 0.0;
  CHECK_NOTHROW((TransitionMatrix(t)));
  t(0, 0) = 0.5;
  CHECK_THROWS_AS((TransitionMatrix(t)), ValidationError);
}

TEST_CASE("kraus_from_transition") {
  SUBCASE("identity gives diagonal unit projectors") {
    auto kraus = kraus_from_transition(
        TransitionMatrix(RealMatrix::Identity(3, 3)));
    for (int j = 0; j < 3; ++j) {
      ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
      expected(j, j) = 1.0;
      CHECK(max_abs(kraus[static_cast<std::size_t>(j)] - expected) == 0.0);
    }
  }

  SUBCASE("swap channel") {
    RealMatrix t(2, 2);
    t << 0.0, 1.0, 1.0, 0.0;
    auto kraus = kraus_from_transition(TransitionMatrix(t));
    CHECK(kraus[0](0, 1) == Complex(1.0, 0.0));
    CHECK(kraus[1](1, 0) == Complex(1.0, 0.0));
    CHECK(std::abs(kraus[0](0, 0)) == 0.0);
  }

  SUBCASE("completeness on the pointer diagonal") {
    // sum_j K_j^dag K_j has unit diagonal by the column-sum property; this
    // rank-one-per-row Kraus form is complete on diagonal states, which is
    // the only domain the classical channel acts on.
    testing::Gen gen(11);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(2, 8);
      TransitionMatrix t(gen.stochastic(n));
      auto kraus = kraus_from_transition(t);
      ComplexMatrix sum = ComplexMatrix::Zero(n, n);
      for (const auto &k : kraus) {
        sum += k.adjoint() * k;
      }
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(sum(i, i) - Complex(1.0, 0.0)) <= 1e-10);
      }
      // Trace preservation on a diagonal state.
      ClassicalState state(gen.probabilities(n));
      ComplexMatrix out = ComplexMatrix::Zero(n, n);
      for (const auto &k : kraus) {
        out += k * state.matrix() * k.adjoint();
      }
      CHECK(std::abs(out.trace() - Complex(1.0, 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("apply_channel") {
  RealMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  ClassicalState s(vec2(0.3, 0.7));

  ClassicalState unchanged =
      apply_channel(s, TransitionMatrix(RealMatrix::Identity(2, 2)));
  CHECK(unchanged.probability(0) == doctest::Approx(0.3));

  ClassicalState swapped = apply_channel(s, TransitionMatrix(swap));
  CHECK(swapped.probability(0) == doctest::Approx(0.7));
  CHECK(swapped.probability(1) == doctest::Approx(0.3));

  CHECK_THROWS_AS(
      apply_channel(s, TransitionMatrix(RealMatrix::Identity(3, 3))),
      DimensionError);

  SUBCASE("matrix-form Kraus evaluation agrees") {
    testing::Gen gen(12);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(2, 6);
      TransitionMatrix t(gen.stochastic(n));
      ClassicalState state(gen.probabilities(n));
      ClassicalState direct = apply_channel(state, t);
      ComplexMatrix rho = state.matrix();
      ComplexMatrix out = ComplexMatrix::Zero(n, n);
      for (const auto &k : kraus_from_transition(t)) {
        out += k * rho * k.adjoint();
      }
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(out(i, i).real() - direct.probability(i)) < 1e-12);
      }
    }
  }

  SUBCASE("channel never produces negative probabilities") {
    testing::Gen gen(13);
    for (int trial = 0; trial < 1000; ++trial) {
      int n = gen.integer(2, 8);
      ClassicalState out = apply_channel(ClassicalState(gen.probabilities(n)),
                                         TransitionMatrix(gen.stochastic(n)));
      CHECK(out.probabilities().minCoeff() >= -1e-12);
    }
  }
}

TEST_CASE("evolve_master") {
  SUBCASE("zero generator is the identity map") {
    ClassicalState s(vec2(0.3, 0.7));
    ClassicalState out = evolve_master(s, MarkovGenerator(RealMatrix::Zero(2, 2)), 5.0);
    CHECK(out.probability(0) == doctest::Approx(0.3).epsilon(1e-12));
  }

  SUBCASE("two-state decay closed form") {
    RealMatrix g(2, 2);
    g << -1.0, 0.0, 1.0, 0.0;
    ClassicalState s(vec2(1.0, 0.0));
    ClassicalState out = evolve_master(s, MarkovGenerator(g), std::log(2.0));
    CHECK(std::abs(out.probability(0) - 0.5) < 1e-10);
    CHECK(std::abs(out.probability(1) - 0.5) < 1e-10);
  }

  SUBCASE("trace preserved for random generators") {
    testing::Gen gen(14);
    for (double t : {0.1, 1.0, 10.0}) {
      for (int trial = 0; trial < 20; ++trial) {
        int n = gen.integer(2, 8);
        ClassicalState out =
            evolve_master(ClassicalState(gen.probabilities(n)),
                          MarkovGenerator(gen.markov_generator(n)), t);
        CHECK(std::abs(out.probabilities().sum() - 1.0) <= 1e-10);
      }
    }
  }

  SUBCASE("generator/channel consistency") {
    testing::Gen gen(15);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(2, 6);
      MarkovGenerator g(gen.markov_generator(n));
      double t = gen.real(0.0, 5.0);
      ClassicalState s(gen.probabilities(n));
      RealMatrix propagator =
          general_exp(g.entries().cast<Complex>(), t).real();
      ClassicalState via_channel =
          apply_channel(s, TransitionMatrix(propagator));
      ClassicalState via_master = evolve_master(s, g, t);
      CHECK(max_abs((via_channel.probabilities() -
                     via_master.probabilities())
                        .cast<Complex>()) < 1e-10);
    }
  }

  SUBCASE("linearity in the state") {
    testing::Gen gen(16);
    for (int trial = 0; trial < 20; ++trial) {
      int n = gen.integer(2, 5);
      MarkovGenerator g(gen.markov_generator(n));
      double t = gen.real(0.0, 3.0);
      RealVector p = gen.probabilities(n);
      RealVector q = gen.probabilities(n);
      double lam = gen.real(0.0, 1.0);
      RealVector mix = lam * p + (1.0 - lam) * q;
      RealVector lhs =
          evolve_master(ClassicalState(mix), g, t).probabilities();
      RealVector rhs =
          lam * evolve_master(ClassicalState(p), g, t).probabilities() +
          (1.0 - lam) *
              evolve_master(ClassicalState(q), g, t).probabilities();
      CHECK(max_abs((lhs - rhs).cast<Complex>()) < 1e-10);
    }
  }
}

TEST_CASE("detailed balance") {
  RealMatrix decay(2, 2);
  decay << -1.0, 0.0, 1.0, 0.0;
  MarkovGenerator g(decay);

  CHECK(detailed_balance_holds(MarkovGenerator(RealMatrix::Zero(2, 2)),
                               ClassicalState(vec2(0.3, 0.7)), 1e-12));
  CHECK_FALSE(detailed_balance_holds(g, ClassicalState(vec2(1.0, 0.0)),
                                     1e-12));
  // Stationary distribution of the decay generator.
  CHECK(detailed_balance_holds(g, ClassicalState(vec2(0.0, 1.0)), 1e-12));

  SUBCASE("symmetric generator with uniform distribution") {
    testing::Gen gen(17);
    for (int trial = 0; trial < 20; ++trial) {
      int n = gen.integer(2, 6);
      RealMatrix m = RealMatrix::Zero(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          m(i, j) = m(j, i) = gen.real(0.0, 1.0);
        }
      }
      for (int c = 0; c < n; ++c) {
        m(c, c) = -m.col(c).sum();
      }
      ClassicalState uniform(RealVector::Constant(n, 1.0 / n));
      MarkovGenerator sym(m);
      CHECK(detailed_balance_holds(sym, uniform, 1e-12));
      // Balance implies stationarity.
      ClassicalState out = evolve_master(uniform, sym, gen.real(0.0, 10.0));
      CHECK(max_abs((out.probabilities() - uniform.probabilities())
                        .cast<Complex>()) < 1e-9);
    }
  }
}

TEST_CASE("shannon_information") {
  CHECK(shannon_information(ClassicalState(vec2(1.0, 0.0))) == 0.0);
  CHECK(shannon_information(ClassicalState(vec2(0.5, 0.5))) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(shannon_information(ClassicalState(RealVector::Constant(4, 0.25))) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  CHECK(shannon_information(ClassicalState(vec2(0.5, 0.5)), 2.5) ==
        doctest::Approx(2.5 * std::log(2.0)));

  SUBCASE("permutation invariance and bounds") {
    testing::Gen gen(18);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(2, 8);
      RealVector p = gen.probabilities(n);
      RealVector reversed = p.reverse();
      double a = shannon_information(ClassicalState(p));
      double b = shannon_information(ClassicalState(reversed));
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
      CHECK(a >= 0.0);
      CHECK(a <= std::log(static_cast<double>(n)) + 1e-12);
    }
  }
}

TEST_CASE("classical_expectation") {
  ClassicalState s(vec2(0.5, 0.5));
  CHECK(classical_expectation(ClassicalObservable(vec2(1.0, 1.0)), s) ==
        doctest::Approx(1.0));
  CHECK(classical_expectation(ClassicalObservable(vec2(1.0, -1.0)), s) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(
      classical_expectation(ClassicalObservable(RealVector::Zero(3)), s),
      DimensionError);

  SUBCASE("agrees with the matrix-trace form") {
    testing::Gen gen(19);
    for (int trial = 0; trial < 30; ++trial) {
      int n = gen.integer(1, 8);
      RealVector f(n);
      for (int i = 0; i < n; ++i) {
        f(i) = gen.real(-3.0, 3.0);
      }
      ClassicalObservable obs(f);
      ClassicalState state(gen.probabilities(n));
      double direct = classical_expectation(obs, state);
      double via_trace = (obs.matrix() * state.matrix()).trace().real();
      CHECK(std::abs(direct - via_trace) < 1e-12);
    }
  }
}
