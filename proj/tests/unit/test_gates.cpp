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

#include <gtest/gtest.h>

#include "holopi/gates.hpp"
#include "holopi/lambda_model.hpp"
#include "test_util.hpp"

namespace holopi::gates {
namespace {

using testing::max_abs;

TEST(Table, Entries) {
  const auto h = table1("H");
  EXPECT_DOUBLE_EQ(h.theta0, kPi / 4);
  EXPECT_DOUBLE_EQ(h.phi0, 0.0);
  EXPECT_DOUBLE_EQ(h.gamma_plus, kPi);
  const auto s = table1("S");
  EXPECT_DOUBLE_EQ(s.theta0, 0.0);
  EXPECT_DOUBLE_EQ(s.gamma_plus, kPi / 6);
  const auto cx = table1("CNOT");
  EXPECT_TRUE(cx.two_qubit());
  EXPECT_DOUBLE_EQ(cx.theta0, kPi / 2);
  EXPECT_DOUBLE_EQ(cx.gamma_plus, kPi);
  EXPECT_LT(max_abs(cx.target - cnot()), 1e-15);
  EXPECT_EQ(table1_all().size(), 7u);
  EXPECT_THROW(table1("T"), GateError);
  EXPECT_EQ(table1("cx").label, "CNOT");
}

TEST(Table, EveryRowMatchesItsTarget) {
  for (const auto& spec : table1_all()) {
    EXPECT_LT(spec_distance(spec, realize(spec)), 1e-10) << spec.label;
  }
  for (double g : {0.3, kPi / 2, 2.0}) {
    const auto spec = table1("CPHASE", g);
    EXPECT_LT(spec_distance(spec, realize(spec)), 1e-10);
  }
}

TEST(Table, GlobalPhaseIsReported) {
  const auto x = table1("X");
  const CMatrix realized = lambda::holonomy_gate(x.theta0, x.phi0, x.gamma_plus);
  EXPECT_LT(max_abs(realized - std::polar(1.0, x.global_phase) * x.target), 1e-12);
}

TEST(Controlled, Structure) {
  EXPECT_LT(distance_up_to_phase(controlled(table1("X")), cnot()), 1e-12);
  EXPECT_LT(max_abs(controlled(CMatrix::Identity(2, 2)) - CMatrix::Identity(4, 4)), 1e-15);
  std::mt19937_64 rng(71);
  const CMatrix u = testing::random_unitary(2, rng);
  const CMatrix c = controlled(u);
  EXPECT_LT(max_abs(c.topLeftCorner(2, 2) - CMatrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(c.bottomRightCorner(2, 2) - u), 1e-15);
  EXPECT_LT(max_abs(c.topRightCorner(2, 2)), 1e-15);
}

TEST(Controlled, ThirdOfThePhaseGivesControlledPhase) {
  // One-third rule: the |1> block of controlled(0, 0, g / 3) equals diag(1, e^{i g})
  // up to the block phase e^{-2 i g / 3}.
  for (double g : {0.4, kPi, 2.5}) {
    const CMatrix block = controlled(decompose(cphase(g).bottomRightCorner(2, 2))).bottomRightCorner(2, 2);
    const CMatrix direct = lambda::holonomy_gate(0.0, 0.0, g / 3.0);
    EXPECT_LT(distance_up_to_phase(direct, cphase(g).bottomRightCorner(2, 2)), 1e-12);
    EXPECT_LT(distance_up_to_phase(block, direct), 1e-10);
    EXPECT_NEAR(std::arg(direct(0, 0)), std::remainder(-2.0 * g / 3.0, 2.0 * kPi), 1e-12);
  }
}

TEST(Decompose, IdentityAndPauliX) {
  const auto id = decompose(CMatrix::Identity(2, 2));
  EXPECT_EQ(id.gamma_plus, 0.0);
  EXPECT_EQ(id.theta0, 0.0);
  EXPECT_EQ(id.phi0, 0.0);
  const auto x = decompose(pauli_x());
  EXPECT_LT(distance_up_to_phase(lambda::holonomy_gate(x.theta0, x.phi0, x.gamma_plus), pauli_x()),
            1e-10);
  EXPECT_NEAR(x.theta0, kPi / 2, 1e-12);
  EXPECT_GE(x.gamma_plus, 0.0);
  EXPECT_LT(x.gamma_plus, 2.0 * kPi / 3.0);
}

TEST(Decompose, RandomRoundTrip) {
  std::mt19937_64 rng(73);
  for (int k = 0; k < 200; ++k) {
    const CMatrix u = testing::random_unitary(2, rng);
    const auto spec = decompose(u);
    EXPECT_LT(distance_up_to_phase(lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus), u),
              1e-10);
    EXPECT_GE(spec.theta0, 0.0);
    EXPECT_LE(spec.theta0, kPi);
    EXPECT_GE(spec.gamma_plus, 0.0);
    EXPECT_LT(spec.gamma_plus, 2.0 * kPi / 3.0);
  }
}

TEST(Decompose, NearIdentityIsStable) {
  const CMatrix u = expm_skew(pauli_y(), 1e-9);
  const auto spec = decompose(u);
  EXPECT_LT(distance_up_to_phase(lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus), u),
            1e-10);
}

TEST(Decompose, RejectsNonUnitary) {
  EXPECT_THROW(decompose(2.0 * pauli_x()), GateError);
  EXPECT_THROW(decompose(CMatrix::Identity(3, 3)), GateError);
}

TEST(BlockwiseDistance, IgnoresIndependentBlockPhases) {
  CMatrix a = cphase(1.0);
  CMatrix b = a;
  b.bottomRightCorner(2, 2) *= std::polar(1.0, 0.8);
  EXPECT_GT(distance_up_to_phase(a, b), 1e-3);
  EXPECT_LT(blockwise_distance(a, b), 1e-14);
  EXPECT_NEAR(blockwise_distance(a, cnot()), blockwise_distance(cnot(), a), 1e-15);
}

}  // namespace
}  // namespace holopi::gates
