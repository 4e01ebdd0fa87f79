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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holopi/control.hpp"
#include "holopi/qmat.hpp"

namespace holopi::propagate {

/// Maps the control program to a Hamiltonian. Implementations are immutable
/// and may be shared between threads.
class HamiltonianModel {
 public:
  virtual ~HamiltonianModel() = default;

  virtual Eigen::Index dim() const = 0;
  /// H at absolute time t (s) with controls c, rad/s.
  virtual CMatrix hamiltonian(const ControlPoint& c, double t) const = 0;
  /// True when H depends on time only through the control point.
  virtual bool autonomous() const { return true; }
  /// Period of the explicit time dependence at fixed controls, if any.
  virtual std::optional<double> period() const { return std::nullopt; }
  /// True when H is the same at every instant of the segment.
  virtual bool constant_over(const Segment& s) const;
  virtual std::vector<std::string> labels() const;
};

/// The three-level Lambda Hamiltonian, basis {|e>, |0>, |1>}.
class LambdaModel final : public HamiltonianModel {
 public:
  explicit LambdaModel(std::vector<std::string> labels = {"e", "0", "1"});
  Eigen::Index dim() const override { return 3; }
  CMatrix hamiltonian(const ControlPoint& c, double t) const override;
  std::vector<std::string> labels() const override { return labels_; }

 private:
  std::vector<std::string> labels_;
};

struct TraceRow {
  double t = 0.0;
  std::vector<double> populations;
  double fidelity = 0.0;
};

enum class Integrator {
  /// Fourth-order Magnus on periodic drives, exponential midpoint elsewhere.
  Auto,
  Midpoint,
  /// Fourth-order commutator-free Magnus: two exponentials per step at the
  /// Gauss points.
  Magnus4,
};

struct EvolveOptions {
  /// Largest step, s, on segments whose Hamiltonian varies. Zero selects
  /// segment duration / default_divisions (period / 128 for periodic drives).
  double substep = 0.0;
  int default_divisions = 64;
  Integrator integrator = Integrator::Auto;
  /// Halve the step until the final propagator moves by less than refine_tol.
  bool refine = true;
  double refine_tol = 1e-7;
  int max_refinements = 10;
  /// Trace rows, evenly spaced in time (snapped to the step grid inside
  /// periodic segments). Needs an initial state; zero disables the trace.
  int trace_rows = 512;
  std::optional<CVector> initial;
  /// Reference state for the trace fidelity column; defaults to the initial state.
  std::optional<CVector> target;
  /// Window [t_begin, t_end]; a negative t_end means the schedule end.
  double t_begin = 0.0;
  double t_end = -1.0;
};

struct PropagationResult {
  CMatrix final_unitary;
  std::vector<TraceRow> trace;
  /// Step used on varying segments (0 when every segment was exact).
  double substep = 0.0;
  /// HS change of the final propagator in the last refinement.
  double refinement_change = 0.0;
  int refinements = 0;
  bool converged = true;
};

class PropagationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time-ordered propagator U(t_end, t_begin) as a product of exponentials
/// evaluated at step midpoints. Segments with constant H are exponentiated
/// in one exact step.
PropagationResult evolve(const Schedule& schedule, const HamiltonianModel& model,
                         const EvolveOptions& options = {});

/// |<a|b>|^2 for normalised states.
double state_fidelity(const CVector& a, const CVector& b);

struct GateError {
  double error = 0.0;    // 1 - |Tr(target^dagger P U P)| / k
  double leakage = 0.0;  // ||(I - P) U P||_HS^2 / k
  bool leakage_ok = true;
};

/// Compares the subspace block of a realised propagator with a k x k target.
GateError gate_error(const CMatrix& realized, const CMatrix& target,
                     std::span<const Eigen::Index> subspace, double leakage_threshold = 1e-2);

/// CSV with header `t,<labels...>,fidelity`, 12 significant digits.
void write_trace_csv(std::ostream& out, std::span<const std::string> labels,
                     std::span<const TraceRow> trace);
std::string format_sig12(double value);

}  // namespace holopi::propagate
