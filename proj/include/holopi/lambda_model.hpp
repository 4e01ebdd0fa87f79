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

#include "holopi/control.hpp"
#include "holopi/qmat.hpp"

/// Resonant three-level Lambda system.
///
/// Basis order is always {|e>, |0>, |1>}; the logical qubit lives in rows and
/// columns 1..2. Eigenstates are labelled bright-plus, bright-minus and dark
/// and are always taken from the closed-form angle parameterisation, so the
/// gauge is smooth in (theta, phi) and the geometric phases are well defined.
namespace holopi::lambda {

inline constexpr Eigen::Index kExcited = 0;
inline constexpr Eigen::Index kZero = 1;
inline constexpr Eigen::Index kOne = 2;

enum class Eigenlabel : int { Plus = 0, Minus = 1, Dark = 2 };
inline constexpr std::array<Eigenlabel, 3> kEigenlabels = {Eigenlabel::Plus, Eigenlabel::Minus,
                                                          Eigenlabel::Dark};

inline constexpr int index(Eigenlabel k) { return static_cast<int>(k); }

struct EigenFrame {
  std::array<double, 3> energies{};  // (+omega, -omega, 0), rad/s
  std::array<CVector, 3> vectors;    // (+, -, dark)

  /// Columns are the three eigenvectors in label order.
  CMatrix matrix() const;
};

/// Accumulated phases per eigenlabel, in rad.
/// alpha is the dynamical phase integral of the energy, gamma the geometric
/// phase i * integral <v|dv/dt>.
struct PhaseRecord {
  std::array<double, 3> alpha{};
  std::array<double, 3> gamma{};
};

/// H = omega sin(theta/2) e^{i phi} |e><0| - omega cos(theta/2) |e><1| + h.c.
CMatrix hamiltonian(const ControlPoint& c);

EigenFrame eigenframe(const ControlPoint& c);
/// The eigenframe only depends on the angles.
EigenFrame eigenframe(double theta, double phi);

/// Exact phase integrals over [0, t] of a piecewise-linear schedule.
PhaseRecord accumulate_phases(const Schedule& schedule, double t);

/// Geometric-phase increment of one segment over local time [0, u].
double segment_gamma_plus(const Segment& segment, double u);

/// Logical-subspace gate of one closed loop, basis {|0>, |1>}.
CMatrix holonomy_gate(double theta0, double phi0, double gamma_plus);

/// Full 3x3 loop operator, basis {|e>, |0>, |1>}.
CMatrix loop_unitary_3level(double theta0, double phi0, double gamma_plus);

}  // namespace holopi::lambda
