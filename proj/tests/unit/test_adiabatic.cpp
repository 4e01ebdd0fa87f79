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

#include "holopi/adiabatic.hpp"
#include "holopi/propagate.hpp"
#include "holopi/schedule.hpp"
#include "test_util.hpp"

namespace holopi::adiabatic {
namespace {

using testing::max_abs;

// Finite-difference oracle for G_kj = -i <phi_k | d/dt phi_j>, the coupling that
// appears in i da_k/dt = E_k a_k + sum_j G_kj a_j.
CMatrix fd_couplings(double theta, double phi, double theta_rate, double phi_rate) {
  const double h = 1e-6;
  const CMatrix vp = lambda::eigenframe(theta + theta_rate * h, phi + phi_rate * h).matrix();
  const CMatrix vm = lambda::eigenframe(theta - theta_rate * h, phi - phi_rate * h).matrix();
  const CMatrix v = lambda::eigenframe(theta, phi).matrix();
  return -kI * v.adjoint() * (vp - vm) / (2.0 * h);
}

TEST(Couplings, MatchFiniteDifferences) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> a(-kPi, kPi);
  std::uniform_real_distribution<double> r(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double th = a(rng), ph = a(rng), tr = r(rng), pr = r(rng);
    EXPECT_LT(max_abs(nonadiabatic_couplings(th, ph, tr, pr) - fd_couplings(th, ph, tr, pr)), 1e-6);
  }
}

TEST(Couplings, PolarRampOnlyCouplesBrightToDark) {
  const double rate = 3.0;
  CMatrix g = nonadiabatic_couplings(1.0, 0.4, rate, 0.0);
  EXPECT_LT(std::abs(g(0, 1)), 1e-15);
  EXPECT_NEAR(std::abs(g(0, 2)), rate / (2.0 * std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(std::abs(g(1, 2)), rate / (2.0 * std::sqrt(2.0)), 1e-15);
}

TEST(Couplings, AzimuthRampAtSouthPoleOnlyCouplesBrightPair) {
  const double rate = 1.7;
  CMatrix g = nonadiabatic_couplings(kPi, 0.3, 0.0, rate);
  EXPECT_NEAR(std::abs(g(0, 1)), rate / 2.0, 1e-15);
  EXPECT_LT(std::abs(g(0, 2)), 1e-15);
  EXPECT_LT(std::abs(g(1, 2)), 1e-15);
}

Schedule ramp(double omega, double ts, double te, double ps, double pe, double duration) {
  return Schedule({Segment{duration, omega, ts, te, ps, pe, "r"}});
}

TEST(AdiabaticOperator, IdentityAtStartAndUnitary) {
  const auto s = schedule::plan_single_qubit(0.9, 0.2, 1.3);
  EXPECT_LT(max_abs(adiabatic_operator(s, 0.0) - CMatrix::Identity(3, 3)), 1e-14);
  for (int k = 1; k <= 20; ++k) {
    EXPECT_TRUE(is_unitary(adiabatic_operator(s, s.duration() * k / 20.0)));
  }
}

TEST(AdiabaticOperator, ClosedLoopEqualsLoopUnitary) {
  for (const auto& [th, ph, gp] : {std::tuple{kPi / 2, 0.0, kPi}, {0.4, 1.0, 0.7}, {0.0, 0.0, 0.3}}) {
    const auto s = schedule::plan_single_qubit(th, ph, gp);
    EXPECT_LT(max_abs(adiabatic_operator(s, s.duration()) - lambda::loop_unitary_3level(th, ph, gp)),
              1e-9);
  }
}

TEST(TransitionHamiltonian, StaticSegmentVanishes) {
  const auto s = ramp(1e7, 0.8, 0.8, 0.3, 0.3, 1e-7);
  EXPECT_EQ(max_abs(transition_hamiltonian(s, 0.5)), 0.0);
}

TEST(TransitionHamiltonian, DiagonalVanishesAndPTimesGReconstructs) {
  const auto s = schedule::plan_single_qubit(0.7, 0.4, 1.1, {});
  for (int k = 0; k <= 40; ++k) {
    const double u = k / 40.0;
    const CMatrix h = transition_hamiltonian(s, u);
    EXPECT_LT(h.diagonal().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(max_abs(h - h.adjoint()), 1e-9 * (1.0 + max_abs(h)));
    const auto pg = pg_decompose(s, u);
    CMatrix rebuilt = pg.p.cwiseProduct(pg.g);
    rebuilt.diagonal().setZero();
    EXPECT_LT(max_abs(rebuilt - h), 1e-9 * (1.0 + max_abs(h)));
  }
}

TEST(PGDecompose, PiBurstFlipsBrightDarkSigns) {
  const double omega = 1e7;
  const double t_pi = kPi / omega;
  Schedule s({Segment{t_pi, 0.0, 0.5, 0.5, 0.0, 0.0, "pre"}, Segment{t_pi, omega, 0.5, 0.5, 0.0, 0.0, "b"}});
  const auto before = pg_decompose(s, 0.0);
  const auto after = pg_decompose(s, 1.0);
  EXPECT_LT(std::abs(before.p(0, 2) - 1.0), 1e-14);
  EXPECT_LT(std::abs(after.p(0, 2) + 1.0), 1e-12);
  EXPECT_LT(std::abs(after.p(1, 2) + 1.0), 1e-12);
  EXPECT_LT(std::abs(after.p(0, 1) - 1.0), 1e-12);
}

TEST(PhaseIntegral, ToyIntegrandMaxima) {
  EXPECT_NEAR(phase_integral(8 * kPi).max_abs, 2.0 / (8 * kPi), 1e-6);
  EXPECT_NEAR(phase_integral(40 * kPi).max_abs, 2.0 / (40 * kPi), 1e-6);
}

TEST(FIntegral, ZeroSchedule) {
  const auto s = ramp(0.0, 0.3, 0.3, 0.0, 0.0, 1e-6);
  const auto r = f_integral(s);
  EXPECT_EQ(r.max_f_norm, 0.0);
  EXPECT_EQ(dyson_bound(r), 0.0);
}

TEST(FIntegral, MatchesBruteForceQuadrature) {
  const auto s = ramp(3e6, 0.4, 2.2, 0.1, 1.4, 2e-6);
  const auto r = f_integral(s);
  ASSERT_TRUE(r.converged);
  // Oracle: plain midpoint sum on a fine grid.
  const int n = 200000;
  CMatrix f = CMatrix::Zero(3, 3);
  for (int k = 0; k < n; ++k) f += transition_hamiltonian(s, (k + 0.5) / n) / n;
  EXPECT_LT(max_abs(r.final_f - f), 1e-7);
  EXPECT_GE(r.max_f_norm + 1e-9, hs_norm(f));
}

TEST(FIntegral, SlowRampScalesInverselyWithDuration) {
  const double omega = 2.0 * kPi * 10e6;
  std::vector<double> taus, norms;
  for (double tau : {1e-6, 3e-6, 1e-5, 3e-5, 1e-4}) {
    taus.push_back(tau);
    norms.push_back(f_integral(schedule::slow_ramp(omega, kPi / 4, 3 * kPi / 4, 0.0, tau)).max_f_norm);
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double v : norms) {
    EXPECT_LT(v, prev);
    prev = v;
  }
  const double slope = std::log(norms.back() / norms.front()) / std::log(taus.back() / taus.front());
  EXPECT_NEAR(slope, -1.0, 0.15);
}

TEST(DysonBound, DecreasesWithDuration) {
  const double omega = 2.0 * kPi * 10e6;
  double prev = std::numeric_limits<double>::infinity();
  for (double tau : {1e-6, 2e-6, 5e-6, 1e-5}) {
    const double b = dyson_bound(f_integral(schedule::slow_ramp(omega, kPi / 4, 3 * kPi / 4, 0.0, tau)));
    EXPECT_LT(b, prev);
    prev = b;
  }
}

TEST(DysonBound, BoundsActualDeviationOnRandomSchedules) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  std::uniform_real_distribution<double> w(0.0, 3e7);
  std::uniform_real_distribution<double> d(0.5e-7, 3e-7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Segment> segs;
    double th = ang(rng), ph = ang(rng);
    for (int k = 0; k < 3; ++k) {
      const double th2 = ang(rng), ph2 = ang(rng);
      segs.push_back({d(rng), w(rng), th, th2, ph, ph2, "x"});
      th = th2;
      ph = ph2;
    }
    const Schedule s(segs);
    const CMatrix ut = transition_operator(s, s.duration());
    const double actual = hs_norm(ut - CMatrix::Identity(3, 3));
    EXPECT_LE(actual, dyson_bound(f_integral(s)) + 1e-9) << "trial " << trial;
  }
}

TEST(TransitionOperator, TelescopingWithMidpointFlips) {
  for (const auto& [ts, te, ps, pe, bb] :
       {std::tuple{0.0, kPi, 0.0, 0.0, false}, {0.3, 2.0, 0.5, 0.5, false},
        {kPi, kPi, 0.0, 2.5, true}}) {
    for (int n = 1; n <= 8; ++n) {
      const auto flips = midpoint_flips(n, bb);
      const CMatrix u = transition_operator(GeodesicRamp{ts, te, ps, pe}, flips);
      EXPECT_LT(hs_norm(u - CMatrix::Identity(3, 3)), 1e-12) << "n=" << n;
    }
  }
}

TEST(TransitionOperator, NoFlipsMatchesFineStepDysonProduct) {
  // Oracle: midpoint product of exp(-i H_T ds) with H_T from the schedule form.
  for (const auto& [ts, te, ps, pe] : {std::tuple{0.2, 1.5, 0.0, 0.0}, {0.4, 1.9, 0.3, 1.7}}) {
    const Schedule s({Segment{1.0, 0.0, ts, te, ps, pe, ""}});
    const int n = 20000;
    CMatrix oracle = CMatrix::Identity(3, 3);
    for (int k = 0; k < n; ++k) oracle = expm_skew(transition_hamiltonian(s, (k + 0.5) / n), 1.0 / n) * oracle;
    const CMatrix u = transition_operator(GeodesicRamp{ts, te, ps, pe}, {});
    const double dev = hs_norm(u - CMatrix::Identity(3, 3));
    EXPECT_GT(dev, 0.1);
    EXPECT_NEAR(dev, hs_norm(oracle - CMatrix::Identity(3, 3)), 1e-8);
    EXPECT_LT(max_abs(u - oracle), 1e-8);
  }
}

TEST(TransitionOperator, RejectsUnsortedFlips) {
  std::vector<FlipEvent> flips{pi_flip(0.6), pi_flip(0.2)};
  EXPECT_THROW(transition_operator(GeodesicRamp{0, 1, 0, 0}, flips), std::invalid_argument);
}

TEST(TransitionOperator, PlannedBurstSchedulesAreIdentity) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = schedule::plan_single_qubit(ang(rng), 2.0 * ang(rng), ang(rng));
    const CMatrix u = transition_operator(s, s.duration());
    EXPECT_LT(hs_norm(u - CMatrix::Identity(3, 3)), 1e-12);
    for (int k = 1; k <= 5; ++k) EXPECT_TRUE(is_unitary(transition_operator(s, s.duration() * k / 5)));
  }
}

TEST(FrameIdentity, LabFrameEqualsAdiabaticTimesTransition) {
  schedule::PlanOptions o;
  o.mode = schedule::PulseMode::Continuous;
  const auto s = schedule::plan_single_qubit(0.8, 0.3, 0.9, o);
  for (double frac : {0.37, 1.0}) {
    const double t = s.duration() * frac;
    propagate::EvolveOptions eo;
    eo.t_end = t;
    eo.trace_rows = 0;
    const CMatrix lab = propagate::evolve(s, propagate::LambdaModel(), eo).final_unitary;
    const CMatrix framed = compose_frame(s, t, transition_operator(s, t));
    EXPECT_LT(hs_norm(lab - framed), 1e-7);
  }
}

}  // namespace
}  // namespace holopi::adiabatic
