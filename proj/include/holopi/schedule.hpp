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

#pragma once

#include <array>
#include <string>
#include <vector>

#include "holopi/control.hpp"
#include "holopi/qmat.hpp"

/// Geodesic loop planning with pi-pulse modulation.
///
/// A loop starts at (theta0, phi0), runs down the meridian to the south pole
/// (step 1), sweeps the azimuth there by 2 * gamma_plus (step 2), climbs the
/// new meridian to the north pole (step 3), resets the azimuth where the
/// Hamiltonian does not depend on it (step 4) and returns to the start
/// (step 5). Each moving step is cut into N equal pieces with a rectangular
/// burst at the midpoint of every piece: area pi on theta ramps, pi/2 on the
/// azimuth sweep.
namespace holopi::schedule {

enum class PulseMode {
  /// Angles ramp with the envelope off; bursts fire with angles frozen.
  Burst,
  /// Envelope stays on while the angles ramp, one piece per burst slot.
  Continuous,
};

struct PlanOptions {
  /// Pieces per step, steps 1..5. Step 4 never carries bursts.
  std::array<int, 5> n_per_step{5, 5, 5, 5, 5};
  /// Burst envelope, rad/s.
  double omega = 2.0 * kPi * 10e6;
  /// Angle ramp rate, rad/s. Default makes a full 0 -> pi ramp last 25 ns.
  double ramp_rate = kPi / 25e-9;
  PulseMode mode = PulseMode::Burst;
  /// Emit the azimuth reset as its own (possibly zero-length) segment.
  bool include_step4 = true;
  /// Duration of the step-4 reset, s. Zero resets instantaneously.
  double step4_duration = 0.0;
  /// When positive, each burst lasts a whole number of these periods (s) and
  /// its envelope is lowered to keep the area. With the drive period of an
  /// off-resonant carrier this removes the switching transient.
  double burst_quantum = 0.0;
};

class PlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kPiBurstArea = kPi;
inline constexpr double kHalfPiBurstArea = kPi / 2;

Schedule plan_single_qubit(double theta0, double phi0, double gamma_plus,
                           const PlanOptions& options = {});

/// Defaults for the two-atom effective Lambda model: steps 1/3/5 in three
/// pieces, step 2 in five, no explicit step 4.
PlanOptions two_qubit_plan_options(double omega_eff);

/// Same loop on the effective (theta, phi) space. Step 4 is omitted: step 5
/// starts directly from the north pole at phi0.
Schedule plan_two_qubit(double theta0, double phi0, double gamma_plus, const PlanOptions& options);

struct StepSummary {
  std::string step;  // tag prefix before the first '.'
  double area = 0.0;
  double duration = 0.0;
  int bursts = 0;
};

struct AuditReport {
  std::vector<std::string> violations;
  std::vector<StepSummary> steps;
  double total_area = 0.0;
  /// total_area reduced into (-pi, pi].
  double area_mod_2pi = 0.0;
  double gamma_plus = 0.0;
  double duration = 0.0;

  bool ok() const { return violations.empty(); }
};

/// Checks angle ranges, continuity, loop closure and the 2 k pi area rule.
/// Azimuth jumps are accepted where theta = 0, since neither the Hamiltonian
/// nor the eigenframe depends on phi there.
AuditReport audit(const Schedule& schedule);

/// One segment with the envelope on while theta moves at constant rate.
Schedule slow_ramp(double omega, double theta_start, double theta_end, double phi, double duration);

}  // namespace holopi::schedule
