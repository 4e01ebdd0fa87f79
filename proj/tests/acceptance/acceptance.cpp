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

// Acceptance checks 1-10. One PASS/FAIL line per check; non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "holopi/adiabatic.hpp"
#include "holopi/config.hpp"
#include "holopi/experiment.hpp"
#include "holopi/gates.hpp"
#include "holopi/lambda_model.hpp"
#include "holopi/propagate.hpp"
#include "holopi/rydberg.hpp"
#include "holopi/schedule.hpp"

namespace {

using namespace holopi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Check {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

experiment::RunResult run_config(const std::string& text) {
  return experiment::run(config::build(config::ConfigSource::parse(text, "acceptance")));
}

Outcome gate_algebra() {
  double worst = 0.0;
  for (const auto& spec : gates::table1_all()) {
    worst = std::max(worst, gates::spec_distance(spec, gates::realize(spec)));
  }
  worst = std::max(worst, distance_up_to_phase(gates::controlled(gates::table1("X")), gates::cnot()));
  return {worst <= 1e-10, "worst distance " + fmt("%.2e", worst)};
}

Outcome toy_integrals() {
  const double a = adiabatic::phase_integral(8 * kPi).max_abs;
  const double b = adiabatic::phase_integral(40 * kPi).max_abs;
  return {std::abs(a - 0.0796) <= 0.003 && std::abs(b - 0.0159) <= 0.001,
          "max|F| " + fmt("%.4f", a) + " at 8pi, " + fmt("%.4f", b) + " at 40pi"};
}

Outcome telescoping() {
  double worst = 0.0;
  const std::vector<adiabatic::GeodesicRamp> ramps{{0.0, kPi, 0.0, 0.0}, {kPi, 0.0, 1.0, 1.0},
                                                   {0.4, 2.1, 0.3, 0.3}};
  for (const auto& r : ramps) {
    for (int n = 1; n <= 8; ++n) {
      const auto flips = adiabatic::midpoint_flips(n, false);
      worst = std::max(worst, hs_norm(adiabatic::transition_operator(r, flips) - CMatrix::Identity(3, 3)));
    }
  }
  for (int n = 1; n <= 8; ++n) {
    const auto flips = adiabatic::midpoint_flips(n, true);
    const adiabatic::GeodesicRamp azimuth{kPi, kPi, 0.0, 2.0};
    worst = std::max(worst, hs_norm(adiabatic::transition_operator(azimuth, flips) - CMatrix::Identity(3, 3)));
  }
  return {worst <= 1e-12, "worst ||U_T - I|| " + fmt("%.2e", worst)};
}

Outcome single_qubit() {
  double worst = 1.0;
  std::ostringstream d;
  for (const char* g : {"X", "Y", "Z", "H", "S"}) {
    const auto r = run_config(std::string("[experiment]\ngate = ") + g +
                              "\n[drive]\nomega_mhz = 10\nn_per_step = 5,5,5,5,5\npulse_mode = burst\n");
    worst = std::min(worst, r.summary.fidelity);
    d << g << ' ' << fmt("%.9f", r.summary.fidelity) << ' ';
  }
  return {worst >= 0.999, d.str()};
}

Outcome effective_two_qubit() {
  const auto cx = run_config("[experiment]\nmode = two-qubit-effective\ngate = CNOT\ninitial = 10\n");
  const auto cp = run_config("[experiment]\nmode = two-qubit-effective\ngate = CPHASE\ninitial = 10+11\n");
  return {std::min(cx.summary.fidelity, cp.summary.fidelity) >= 0.999,
          "CNOT " + fmt("%.9f", cx.summary.fidelity) + ", CPHASE " + fmt("%.9f", cp.summary.fidelity)};
}

Outcome full_two_qubit() {
  const auto cx = run_config("[experiment]\nmode = two-qubit-full\ngate = CNOT\ninitial = 10\n[numerics]\ntrace_rows = 0\n");
  const auto cp = run_config(
      "[experiment]\nmode = two-qubit-full\ngate = CPHASE\ninitial = 10+11\n[numerics]\ntrace_rows = 0\n");
  return {std::min(cx.summary.fidelity, cp.summary.fidelity) >= 0.98,
          "CNOT " + fmt("%.4f", cx.summary.fidelity) + " (residual " + fmt("%.2e", 1 - cx.summary.fidelity) +
              ", leakage " + fmt("%.2e", cx.summary.leakage) + "), CPHASE " + fmt("%.4f", cp.summary.fidelity) +
              " (residual " + fmt("%.2e", 1 - cp.summary.fidelity) + ")"};
}

Outcome effective_hamiltonian() {
  const double o = 2.0 * kPi * 10e6, delta = 38.0 * o;
  const double w = 2.0 * o * o / delta;
  auto opts = schedule::two_qubit_plan_options(w);
  const auto sched = schedule::plan_two_qubit(kPi / 2, 0.0, kPi, opts);
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, sched.duration());
  const rydberg::FullModel model(delta);
  double worst = 0.0, worst_rr = 0.0, cross = 0.0;
  int driven = 0;
  while (driven < 10) {
    const double t = u(rng);
    const ControlPoint c = sched.at(t);
    if (c.omega == 0.0) continue;  // drives off: nothing to compare
    ++driven;
    // Random drive phase on top of the planned one exercises the conjugation structure.
    ControlPoint cc = c;
    cc.phi += u(rng) / sched.duration() * 2.0 * kPi;
    const auto p = model.params(cc);
    const auto eff = rydberg::james_effective(rydberg::oscillating_terms(p));
    CMatrix secular = eff.secular();
    secular(rydberg::krr, rydberg::krr) += p.v12 - 2.0 * p.delta;
    const CMatrix closed = rydberg::closed_form_effective(p);
    for (auto i : rydberg::comparison_states()) {
      for (auto j : rydberg::comparison_states()) {
        worst = std::max(worst, std::abs(secular(i, j) - closed(i, j)) / w);
        cross = std::max(cross, std::abs(eff.at(t)(i, j) - eff.secular()(i, j)) / w);
      }
    }
    worst_rr = std::max(worst_rr, std::abs(secular(rydberg::krr, rydberg::krr)) / w);
  }
  return {worst <= 1e-12 && worst_rr <= 1e-12,
          "secular vs closed form " + fmt("%.2e", worst) + ", rr coefficient " + fmt("%.2e", worst_rr) +
              " (relative to omega_eff); oscillating cross terms up to " + fmt("%.2e", cross)};
}

Outcome ramp_scaling() {
  const std::vector<double> taus{1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4};
  const auto s = experiment::ramp_scaling(2.0 * kPi * 10e6, kPi / 4, 3 * kPi / 4, taus);
  return {std::abs(s.slope + 1.0) <= 0.15, "slope " + fmt("%.4f", s.slope) + " over tau 1 us .. 100 us"};
}

Outcome frame_identity() {
  struct Case {
    double theta0, phi0, gamma_plus;
    schedule::PulseMode mode;
  };
  const std::vector<Case> cases{{kPi / 2, 0.0, kPi, schedule::PulseMode::Continuous},
                                {kPi / 4, 0.0, kPi, schedule::PulseMode::Burst},
                                {0.3, 1.1, 0.7, schedule::PulseMode::Continuous}};
  double worst = 0.0;
  for (const auto& c : cases) {
    schedule::PlanOptions o;
    o.mode = c.mode;
    const auto s = schedule::plan_single_qubit(c.theta0, c.phi0, c.gamma_plus, o);
    propagate::EvolveOptions eo;
    eo.trace_rows = 0;
    const CMatrix lab = propagate::evolve(s, propagate::LambdaModel(), eo).final_unitary;
    const double tau = s.duration();
    const CMatrix framed = adiabatic::compose_frame(s, tau, adiabatic::transition_operator(s, tau));
    worst = std::max(worst, hs_norm(lab - framed));
  }
  return {worst <= 1e-7, "worst ||U - U_A U_T|| " + fmt("%.2e", worst)};
}

Outcome decomposition() {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    CMatrix m(2, 2);
    for (int i = 0; i < 4; ++i) m(i / 2, i % 2) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<CMatrix> qr(m);
    const CMatrix u = qr.householderQ();
    const auto spec = gates::decompose(u);
    worst = std::max(worst, distance_up_to_phase(
                                lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus), u));
  }
  return {worst <= 1e-10, "worst round-trip distance " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<Check> checks{
      {1, "gate table algebra", 1.0, gate_algebra},
      {2, "toy transition integrals", 1.0, toy_integrals},
      {3, "telescoping with midpoint flips", 1.0, telescoping},
      {4, "single-qubit time domain", 10.0, single_qubit},
      {5, "two-qubit effective model", 10.0, effective_two_qubit},
      {6, "two-qubit full model", 60.0, full_two_qubit},
      {7, "effective Hamiltonian construction", 1.0, effective_hamiltonian},
      {8, "slow-ramp scaling", 30.0, ramp_scaling},
      {9, "frame identity", 10.0, frame_identity},
      {10, "decomposition round trip", 1.0, decomposition},
  };
  int failed = 0;
  for (const auto& c : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = dt < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("criterion %2d %s  %-36s %s; %.3f s of %.0f s%s\n", c.id, pass ? "PASS" : "FAIL",
                c.title.c_str(), o.detail.c_str(), dt, c.budget_s, in_time ? "" : " (over budget)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
