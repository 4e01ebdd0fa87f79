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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holopi/config.hpp"
#include "holopi/gates.hpp"
#include "holopi/propagate.hpp"

namespace holopi::experiment {

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Summary record. JSON keys: gate, mode, fidelity, gate_error, leakage,
/// area_mod_2pi, gamma_plus, runtime_s, metrics (object), warnings (array).
/// Quantities a mode does not produce are written as null.
struct Summary {
  std::string gate;
  std::string mode;
  double fidelity = 0.0;
  double gate_error = 0.0;
  double leakage = 0.0;
  double area_mod_2pi = 0.0;
  double gamma_plus = 0.0;
  double runtime_s = 0.0;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> warnings;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct RunResult {
  Summary summary;
  Schedule schedule;
  std::vector<std::string> labels;
  std::vector<propagate::TraceRow> trace;
  /// Mode-specific table (adiabaticity scaling); empty otherwise.
  Table table;
};

gates::GateSpec resolve_gate(const config::ExperimentConfig& cfg);

/// The control program the configuration asks for (audited by `run`).
Schedule plan(const config::ExperimentConfig& cfg, const gates::GateSpec& spec);

/// Initial state for a label in the basis of the mode: {e, 0, 1}, {rr, 10, 11}
/// or the nine two-atom states. Labels: 0, 1, e, +, -, +i for one qubit;
/// 00, 01, 10, 11, 10+11 for two.
CVector initial_state(const config::ExperimentConfig& cfg, const gates::GateSpec& spec);

/// Runs one experiment. Audit violations abort before any propagation.
RunResult run(const config::ExperimentConfig& cfg);

/// trace.csv, schedule.txt and summary.json (or adiabaticity.csv) in dir.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

std::string summary_json(const Summary& s);

struct SweepPoint {
  std::string value;
  RunResult result;
};

/// Runs every grid point of the configured sweep axis on a bounded worker
/// pool. Results come back in grid order whatever the worker count.
std::vector<SweepPoint> sweep(const config::ConfigSource& base, int workers = 0);

/// sweep.csv, sweep.json and one point_NNN directory per grid value.
void write_sweep(std::span<const SweepPoint> points, const std::string& axis,
                 const std::filesystem::path& dir);

struct GatecheckRow {
  std::string label;
  double theta0 = 0.0;
  double phi0 = 0.0;
  double gamma_plus = 0.0;
  double distance = 0.0;
  double global_phase = 0.0;
  bool pass = false;
};

std::vector<GatecheckRow> gatecheck(std::span<const gates::GateSpec> specs, double tol = 1e-10);
void print_gatecheck(std::ostream& out, std::span<const GatecheckRow> rows);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct RampScaling {
  std::vector<double> tau;
  std::vector<double> max_f_norm;
  std::vector<double> dyson_bound;
  double slope = 0.0;
};

/// max ||F|| of a flip-free slow ramp at constant envelope for each duration.
RampScaling ramp_scaling(double omega, double theta_start, double theta_end,
                         std::span<const double> taus);

}  // namespace holopi::experiment
