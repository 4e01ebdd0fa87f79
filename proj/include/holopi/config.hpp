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
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "holopi/rydberg.hpp"
#include "holopi/schedule.hpp"

/// Experiment configuration files.
///
/// INI text: `[section]` headers and `key = value` lines, `;` or `#`
/// comments. Frequencies are given in MHz and converted once, at build time,
/// to angular frequency: omega [rad/s] = 2 pi * 1e6 * f [MHz]. Times are in
/// ns. Angles accept plain radians or multiples of pi (`pi/2`, `3pi/4`,
/// `0.5*pi`).
namespace holopi::config {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { SingleQubit, TwoQubitEffective, TwoQubitFull, Toggling, Adiabaticity };

std::string_view to_string(Mode m);

/// Raw `section.key -> value` entries with their origin, before validation.
class ConfigSource {
 public:
  struct Entry {
    std::string value;
    std::string origin;  // "file:line" or "--set"
  };

  /// Parses INI text; `name` labels diagnostics.
  static ConfigSource parse(std::string_view text, const std::string& name = "<config>");
  static ConfigSource load(const std::filesystem::path& path);

  /// Applies `section.key=value`.
  void set(std::string_view assignment, const std::string& origin = "--set");
  void set(const std::string& key, const std::string& value, const std::string& origin);

  const std::map<std::string, Entry>& entries() const { return entries_; }
  const Entry* find(const std::string& key) const;

 private:
  std::map<std::string, Entry> entries_;
};

struct ExperimentConfig {
  Mode mode = Mode::SingleQubit;

  /// Table label (X, Y, Z, H, S, CNOT, CPHASE) or "custom".
  std::string gate = "X";
  double theta0 = 0.0;
  double phi0 = 0.0;
  double gamma_plus = 0.0;
  double cphase_gamma = kPi;
  /// State label; empty selects the default for the gate.
  std::string initial;

  /// Burst envelope (single qubit) or atom-1 drive Omega_11 (two qubit), rad/s.
  double omega = 2.0 * kPi * 10e6;
  /// Duration of a full 0 -> pi angle ramp, s.
  double ramp_time = 25e-9;
  /// Pieces per step; empty selects the mode default.
  std::vector<int> n_per_step;
  schedule::PulseMode pulse_mode = schedule::PulseMode::Burst;
  double delta_ratio = 38.0;
  rydberg::V12Mode v12_mode = rydberg::V12Mode::Tracking;
  /// Round two-qubit bursts to whole drive periods 2 pi / delta.
  bool quantize_bursts = true;

  double substep = 0.0;  // s, 0 = automatic
  double refine_tol = 1e-7;
  int trace_rows = 512;

  std::filesystem::path output = "holopi-out";
  int workers = 0;  // 0 = hardware concurrency

  std::string sweep_axis;
  std::vector<std::string> sweep_values;

  std::vector<double> toy_tau_delta_e{8.0 * kPi, 40.0 * kPi};
  std::vector<double> ramp_tau{1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5, 1e-4};  // s
  double ramp_omega = 2.0 * kPi * 10e6;
  double ramp_theta_start = kPi / 4;
  double ramp_theta_end = 3.0 * kPi / 4;
};

/// Validates a source and converts units. Unknown keys, malformed values and
/// mode-inconsistent settings raise ConfigError naming the origin and key.
ExperimentConfig build(const ConfigSource& source);

/// Every recognised `section.key`.
const std::vector<std::string>& known_keys();

/// Number or multiple of pi: `1.5`, `pi`, `-pi/2`, `3pi/4`, `0.25*pi`.
double parse_angle(std::string_view text);
double parse_number(std::string_view text);
std::vector<std::string> split_list(std::string_view text);

/// MHz to rad/s.
inline double mhz_to_rad_per_s(double mhz) { return 2.0 * kPi * 1e6 * mhz; }

}  // namespace holopi::config
