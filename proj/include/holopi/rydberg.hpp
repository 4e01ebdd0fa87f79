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
#include <span>
#include <string>
#include <vector>

#include "holopi/propagate.hpp"
#include "holopi/qmat.hpp"

/// Two Rydberg atoms with bichromatic drives at detunings +-delta, in the
/// frame rotating at 2 delta on |rr>.
namespace holopi::rydberg {

/// Two-atom product basis, atom 1 first.
enum Basis : Eigen::Index {
  k00 = 0, k01, k0r, k10, k11, k1r, kr0, kr1, krr,
};
inline constexpr Eigen::Index kDim = 9;
const std::array<std::string, kDim>& basis_labels();

struct RydbergParams {
  Complex omega11{0.0, 0.0};  // atom 1, |1> <-> |r>, rad/s
  Complex omega20{0.0, 0.0};  // atom 2, |0> <-> |r>
  Complex omega21{0.0, 0.0};  // atom 2, |1> <-> |r>
  double delta = 0.0;         // rad/s
  double v12 = 0.0;           // rad/s
};

class RydbergError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OscillatingTerm {
  CMatrix h;
  double omega = 0.0;
};

/// (h1, delta) and (h2, 3 delta).
std::vector<OscillatingTerm> oscillating_terms(const RydbergParams& p);

/// sum_n h_n e^{-i w_n t} + h.c. + (V12 - 2 delta)|rr><rr|.
CMatrix full_hamiltonian(const RydbergParams& p, double t);

/// 2 delta - 4 (|O11|^2 + |O20|^2 + |O21|^2) / (3 delta).
double v12_condition(const RydbergParams& p);

/// Human-readable notes for drives that are not well below delta / 10.
std::vector<std::string> validity_warnings(const RydbergParams& p);

/// Second-order time-averaged Hamiltonian of a set of oscillating terms.
class EffectiveHamiltonian {
 public:
  explicit EffectiveHamiltonian(std::vector<OscillatingTerm> terms);

  /// Full double sum, including the cross terms oscillating at w_m - w_n.
  CMatrix at(double t) const;
  /// Terms with m = n only; time independent.
  CMatrix secular() const;
  const std::vector<OscillatingTerm>& terms() const { return terms_; }

 private:
  std::vector<OscillatingTerm> terms_;
};

/// Validates frequencies (positive, pairwise distinct) and builds the
/// effective Hamiltonian.
EffectiveHamiltonian james_effective(std::vector<OscillatingTerm> terms);

/// The reduced closed form on the 9-level basis: couplings 2 O11 O20 / delta
/// and 2 O11 O21 / delta between |rr> and |10>, |11>, plus the |rr> shift
/// V12 - 2 delta + 4 (|O11|^2 + |O20|^2 + |O21|^2) / (3 delta).
CMatrix closed_form_effective(const RydbergParams& p);

/// Indices of the states on which closed_form_effective is compared.
std::span<const Eigen::Index> comparison_states();

/// 3x3 Lambda Hamiltonian on {|rr>, |10>, |11>}.
CMatrix effective_lambda(const RydbergParams& p);

struct Drives {
  Complex omega11;
  Complex omega20;
  Complex omega21;
};

/// Physical drives that realise effective amplitude omega_eff at (theta, phi).
Drives map_controls(double omega_eff, double theta, double phi, double delta);

/// Positions of |rr>, |10>, |11> in the 9-level basis, matching {e, 0, 1}.
std::array<Eigen::Index, 3> lambda_embedding();

enum class V12Mode {
  /// V12 follows the instantaneous drives; 2 delta while they are off.
  Tracking,
  /// V12 fixed at its value for the peak effective amplitude.
  Fixed,
};

/// Rotated-frame 9-level model driven by an effective (omega, theta, phi)
/// schedule through map_controls.
class FullModel final : public propagate::HamiltonianModel {
 public:
  FullModel(double delta, V12Mode mode = V12Mode::Tracking, double peak_omega_eff = 0.0);

  Eigen::Index dim() const override { return kDim; }
  CMatrix hamiltonian(const ControlPoint& c, double t) const override;
  bool autonomous() const override { return false; }
  std::optional<double> period() const override;
  std::vector<std::string> labels() const override;

  RydbergParams params(const ControlPoint& c) const;
  double delta() const { return delta_; }

 private:
  double delta_;
  V12Mode mode_;
  double fixed_v12_;
};

/// The effective Lambda model with basis labels {rr, 10, 11}.
propagate::LambdaModel effective_model();

/// Embeds a 3-vector on {rr, 10, 11} into the 9-level space.
CVector embed_lambda_state(const CVector& v3);

/// Embeds a two-qubit state on {00, 01, 10, 11} into the 9-level space.
CVector embed_qubits(const CVector& v4);

/// Rows/cols of the 9-level basis holding the computational states.
std::array<Eigen::Index, 4> qubit_indices();

}  // namespace holopi::rydberg
