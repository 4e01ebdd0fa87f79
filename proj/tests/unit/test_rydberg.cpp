// Copyright 2026 The holopi Authors
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

#include <array>
#include <tuple>

#include <gtest/gtest.h>

#include "holopi/gates.hpp"
#include "holopi/lambda_model.hpp"
#include "holopi/rydberg.hpp"
#include "holopi/schedule.hpp"
#include "test_util.hpp"

namespace holopi::rydberg {
namespace {

using testing::max_abs;

RydbergParams params(Complex o11, Complex o20, Complex o21, double delta, double v12) {
  RydbergParams p;
  p.omega11 = o11;
  p.omega20 = o20;
  p.omega21 = o21;
  p.delta = delta;
  p.v12 = v12;
  return p;
}

// Restriction to rows/cols {00, 01, 10, 11, rr}.
CMatrix restrict(const CMatrix& m) {
  const auto idx = comparison_states();
  CMatrix out(idx.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
  }
  return out;
}

TEST(FullHamiltonian, DrivesOffLeavesOnlyTheRydbergShift) {
  const auto p = params(0.0, 0.0, 0.0, 38.0, 70.0);
  CMatrix expected = CMatrix::Zero(kDim, kDim);
  expected(krr, krr) = 70.0 - 76.0;
  EXPECT_EQ(max_abs(full_hamiltonian(p, 0.3) - expected), 0.0);
}

TEST(FullHamiltonian, HandAssembledEntriesAtTimeZero) {
  // At t = 0 every ground-to-single coupling appears twice (from h1 and h1^dagger)
  // and every |rr> coupling twice (from h1 and h2).
  const double o11 = 1.0, o20 = 0.5, o21 = -0.5, delta = 38.0, v12 = 75.0;
  const auto p = params(o11, o20, o21, delta, v12);
  const std::vector<std::tuple<Basis, Basis, double>> entries{
      {kr0, k10, 2 * o11}, {kr1, k11, 2 * o11}, {k0r, k00, 2 * o20}, {k1r, k10, 2 * o20},
      {k0r, k01, 2 * o21}, {k1r, k11, 2 * o21}, {k1r, krr, 2 * o11}, {kr0, krr, 2 * o20},
      {kr1, krr, 2 * o21}};
  CMatrix oracle = CMatrix::Zero(kDim, kDim);
  for (const auto& [i, j, v] : entries) {
    oracle(i, j) += v;
    oracle(j, i) += v;
  }
  oracle(krr, krr) = v12 - 2.0 * delta;
  EXPECT_LT(max_abs(full_hamiltonian(p, 0.0) - oracle), 1e-14);
}

TEST(FullHamiltonian, HermitianAtRandomTimes) {
  const auto p = params({1.0, 0.2}, {0.3, -0.7}, {-0.5, 0.1}, 38.0, 60.0);
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> t(0.0, 10.0);
  for (int k = 0; k < 10; ++k) {
    const CMatrix h = full_hamiltonian(p, t(rng));
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-15);
  }
}

TEST(V12Condition, Examples) {
  EXPECT_DOUBLE_EQ(v12_condition(params(0, 0, 0, 5.0, 0)), 10.0);
  const double o = 2.0 * kPi * 10e6, delta = 38.0 * o;
  for (double theta : {0.0, 0.7, kPi / 2, kPi}) {
    const auto d = map_controls(2.0 * o * o / delta, theta, 0.4, delta);
    const auto p = params(d.omega11, d.omega20, d.omega21, delta, 0);
    EXPECT_NEAR(v12_condition(p), 2.0 * delta - 8.0 * o * o / (3.0 * delta), 1e-6);
  }
  EXPECT_THROW(v12_condition(params(1, 0, 0, 0.0, 0)), RydbergError);
}

TEST(Commutator, TripleLoopOracleOnRydbergTerms) {
  const auto terms = oscillating_terms(params({1.0, 0.3}, {0.5, -0.2}, {-0.5, 0.4}, 38.0, 0));
  const CMatrix a = terms[0].h.adjoint();
  const CMatrix& b = terms[1].h;
  CMatrix oracle = CMatrix::Zero(kDim, kDim);
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      for (int k = 0; k < kDim; ++k) oracle(i, j) += a(i, k) * b(k, j) - b(i, k) * a(k, j);
    }
  }
  EXPECT_LT(max_abs(commutator(a, b) - oracle), 1e-14);
}

TEST(JamesEffective, SingleTerm) {
  std::mt19937_64 rng(83);
  const CMatrix h = testing::random_matrix(4, rng);
  const auto eff = james_effective({{h, 2.5}});
  const CMatrix expected = commutator(h.adjoint(), h) / 2.5;
  EXPECT_LT(max_abs(eff.secular() - expected), 1e-13);
  EXPECT_LT(max_abs(eff.at(0.7) - expected), 1e-13);
  EXPECT_LT(max_abs(eff.at(13.0) - expected), 1e-13);
}

TEST(JamesEffective, CommutingTermsHaveNoCrossTerms) {
  std::mt19937_64 rng(85);
  std::normal_distribution<double> g;
  CMatrix a = CMatrix::Zero(5, 5), b = CMatrix::Zero(5, 5);
  for (int k = 0; k < 5; ++k) {
    a(k, k) = Complex(g(rng), g(rng));
    b(k, k) = Complex(g(rng), g(rng));
  }
  const auto eff = james_effective({{a, 1.0}, {b, 3.0}});
  for (double t : {0.1, 0.9, 4.0}) EXPECT_LT(max_abs(eff.at(t) - eff.secular()), 1e-14);
}

TEST(JamesEffective, HermitianAtSampledTimes) {
  const auto p = params({1.0, 0.2}, {0.3, -0.7}, {-0.5, 0.1}, 38.0, 60.0);
  const auto eff = james_effective(oscillating_terms(p));
  for (int k = 0; k < 10; ++k) {
    const CMatrix h = eff.at(0.37 * k);
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-12);
  }
}

TEST(JamesEffective, RejectsBadTerms) {
  const CMatrix h = CMatrix::Identity(2, 2);
  EXPECT_THROW(james_effective({{h, 1.0}, {h, 1.0}}), RydbergError);
  EXPECT_THROW(james_effective({{h, -1.0}}), RydbergError);
  EXPECT_THROW(james_effective({{h, 1.0}, {CMatrix::Identity(3, 3), 2.0}}), RydbergError);
}

TEST(JamesEffective, ReproducesTheClosedForm) {
  std::mt19937_64 rng(87);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    const double delta = 38.0;
    const auto p = params({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, delta, 70.0 + g(rng));
    CMatrix secular = james_effective(oscillating_terms(p)).secular();
    secular(krr, krr) += p.v12 - 2.0 * p.delta;
    EXPECT_LT(max_abs(restrict(secular) - restrict(closed_form_effective(p))), 1e-12);
  }
}

TEST(JamesEffective, ConditionZeroesTheRydbergShift) {
  const double o = 1.0, delta = 38.0;
  for (double theta : {0.3, kPi / 2, 2.9}) {
    const auto d = map_controls(2.0 * o * o / delta, theta, 1.1, delta);
    auto p = params(d.omega11, d.omega20, d.omega21, delta, 0.0);
    p.v12 = v12_condition(p);
    CMatrix secular = james_effective(oscillating_terms(p)).secular();
    secular(krr, krr) += p.v12 - 2.0 * p.delta;
    EXPECT_LT(std::abs(secular(krr, krr)), 1e-12);
    EXPECT_LT(std::abs(closed_form_effective(p)(krr, krr)), 1e-12);
  }
}

TEST(EffectiveLambda, MatchesLambdaHamiltonianUnderControlMap) {
  const double delta = 2.0 * kPi * 380e6;
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> a(0.0, kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = 2.0 * kPi * 1e6 * (1.0 + trial), theta = a(rng), phi = 2.0 * a(rng);
    const auto d = map_controls(w, theta, phi, delta);
    const auto p = params(d.omega11, d.omega20, d.omega21, delta, 0.0);
    const CMatrix lam = lambda::hamiltonian({w, theta, phi});
    EXPECT_LT(max_abs(effective_lambda(p) - lam), 1e-12 * w);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(effective_lambda(p));
    EXPECT_NEAR(es.eigenvalues()(0), -w, 1e-9 * w);
    EXPECT_NEAR(es.eigenvalues()(1), 0.0, 1e-9 * w);
    EXPECT_NEAR(es.eigenvalues()(2), w, 1e-9 * w);
  }
}

TEST(EffectiveLambda, NoOmega20GivesTwoLevelCoupling) {
  const CMatrix h = effective_lambda(params(1.0, 0.0, -0.8, 10.0, 0.0));
  EXPECT_EQ(h(0, 1), 0.0);
  EXPECT_EQ(h(1, 0), 0.0);
  EXPECT_NE(h(0, 2), 0.0);
}

TEST(MapControls, Examples) {
  const auto north = map_controls(4.0, 0.0, 0.3, 2.0);
  EXPECT_EQ(north.omega20, 0.0);
  EXPECT_DOUBLE_EQ(north.omega21.real(), -north.omega11.real());
  const double o = 2.0 * kPi * 10e6, delta = 38.0 * o;
  const auto d = map_controls(2.0 * o * o / delta, 1.0, 0.0, delta);
  EXPECT_NEAR(d.omega11.real(), o, 1e-6);
  EXPECT_THROW(map_controls(1.0, 0.0, 0.0, 0.0), RydbergError);
}

TEST(Validity, WarnsAboveTenthOfDetuning) {
  EXPECT_TRUE(validity_warnings(params(1.0, 0.5, -0.5, 38.0, 0)).empty());
  EXPECT_EQ(validity_warnings(params(5.0, 0.5, -0.5, 38.0, 0)).size(), 1u);
}

TEST(FullModel, DrivesOffHoldInteractionAtTwiceTheDetuning) {
  const FullModel tracking(38.0);
  const auto p = tracking.params({0.0, 1.0, 0.0});
  EXPECT_DOUBLE_EQ(p.v12, 76.0);
  EXPECT_EQ(max_abs(tracking.hamiltonian({0.0, 1.0, 0.0}, 0.4)), 0.0);
  const FullModel fixed(38.0, V12Mode::Fixed, 2.0);
  EXPECT_DOUBLE_EQ(fixed.params({0.0, 1.0, 0.0}).v12, fixed.params({2.0, 0.5, 0.0}).v12);
  EXPECT_NEAR(tracking.params({2.0, 0.5, 0.0}).v12, fixed.params({2.0, 0.5, 0.0}).v12, 1e-12);
  EXPECT_THROW(FullModel(38.0, V12Mode::Fixed, 0.0), RydbergError);
  EXPECT_DOUBLE_EQ(*tracking.period(), 2.0 * kPi / 38.0);
}

class FullModelCnot : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    const double o = 2.0 * kPi * 10e6;
    delta_ = 38.0 * o;
    const double w = 2.0 * o * o / delta_;
    auto opts = schedule::two_qubit_plan_options(w);
    opts.burst_quantum = 2.0 * kPi / delta_;
    schedule_ = schedule::plan_two_qubit(kPi / 2, 0.0, kPi, opts);
    propagate::EvolveOptions eo;
    eo.trace_rows = 0;
    full_ = propagate::evolve(schedule_, FullModel(delta_), eo).final_unitary;
    effective_ = propagate::evolve(schedule_, effective_model(), eo).final_unitary;
  }
  static inline double delta_ = 0.0;
  static inline Schedule schedule_;
  static inline CMatrix full_, effective_;
};

TEST_F(FullModelCnot, ControlZeroIsDark) {
  for (Basis b : {k00, k01}) {
    const CVector out = full_ * basis_vector(kDim, b);
    EXPECT_GE(std::norm(out(b)), 1.0 - 1e-2) << basis_labels()[b];
  }
}

TEST_F(FullModelCnot, AgreesWithEffectiveModelOnTheLambdaSubspace) {
  const auto idx = lambda_embedding();
  for (int k = 1; k < 3; ++k) {
    const CVector psi3 = basis_vector(3, k);
    const CVector eff = embed_lambda_state(effective_ * psi3);
    const CVector full = full_ * embed_lambda_state(psi3);
    CVector proj = CVector::Zero(3);
    for (int i = 0; i < 3; ++i) proj(i) = full(idx[i]);
    // Overlap within the subspace after renormalizing, plus the population
    // that stayed there. The remainder sits in the singly excited states.
    const double inside = proj.squaredNorm();
    CVector eff3 = CVector::Zero(3);
    for (int i = 0; i < 3; ++i) eff3(i) = eff(idx[i]);
    EXPECT_GE(std::norm(eff3.dot(proj)) / inside, 0.98);
    EXPECT_GE(inside, 0.98);
  }
}

TEST_F(FullModelCnot, IsUnitary) { EXPECT_TRUE(is_unitary(full_)); }

}  // namespace
}  // namespace holopi::rydberg
