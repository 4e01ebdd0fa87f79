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

#include <string>
#include <string_view>
#include <vector>

#include "holopi/qmat.hpp"

namespace holopi::gates {

struct GateSpec {
  double theta0 = 0.0;
  double phi0 = 0.0;
  double gamma_plus = 0.0;
  /// 2x2 for single-qubit gates, 4x4 (basis 00, 01, 10, 11) for controlled ones.
  CMatrix target;
  std::string label;
  /// arg of Tr(target^dagger realized), realized = closed-form holonomy.
  double global_phase = 0.0;
  /// Target matches only per control block, each block with its own phase.
  bool per_block_phase = false;

  bool two_qubit() const { return target.rows() == 4; }
};

class GateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

CMatrix hadamard();
CMatrix s_gate();
CMatrix cnot();
/// diag(1, 1, 1, e^{i gamma}).
CMatrix cphase(double gamma);

/// Labels: X, Y, Z, H, S, CNOT, CPHASE (case-insensitive; sx/sigma_x style
/// aliases accepted). `cphase_gamma` is the conditional phase for CPHASE.
GateSpec table1(std::string_view label, double cphase_gamma = kPi);

/// Every table entry, CPHASE at the given conditional phase.
std::vector<GateSpec> table1_all(double cphase_gamma = kPi);

/// Holonomy parameters for an arbitrary single-qubit unitary. The rotation
/// angle is taken in [0, pi], so gamma_plus lies in [0, pi/3].
GateSpec decompose(const CMatrix& target);

/// |0><0| (x) I + |1><1| (x) U_h1, control on atom 1.
CMatrix controlled(const GateSpec& spec);
CMatrix controlled(const CMatrix& u);

/// Closed-form realisation of a spec: holonomy_gate, or its controlled form.
CMatrix realize(const GateSpec& spec);

/// Largest distance_up_to_phase between matching 2x2 diagonal blocks of two
/// 4x4 block-diagonal unitaries, each block compared with its own phase.
/// Returns 1 if either matrix has weight off the block diagonal.
double blockwise_distance(const CMatrix& u, const CMatrix& v);

/// Distance used for a spec: blockwise when per_block_phase is set,
/// whole-matrix otherwise.
double spec_distance(const GateSpec& spec, const CMatrix& realized);

}  // namespace holopi::gates
