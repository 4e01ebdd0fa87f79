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

#include <functional>
#include <span>
#include <vector>

#include "holopi/control.hpp"
#include "holopi/lambda_model.hpp"
#include "holopi/qmat.hpp"

/// Adiabatic-following machinery for Lambda-model control programs.
///
/// Conventions: a schedule of total duration tau is viewed on the scaled time
/// s = t / tau. Quantities reported "in s units" (transition Hamiltonian,
/// couplings) are tau times their per-second value, so that integrals over s
/// are dimensionless. Matrices indexed by eigenlabel use the order
/// (+, -, dark) and refer to the eigenbasis at s = 0.
namespace holopi::adiabatic {

/// G_kj = i <d/dt phi_k | phi_j> from the closed-form eigenvectors, given
/// the angle rates (rad per unit of whatever time the rates are in).
CMatrix nonadiabatic_couplings(double theta, double phi, double theta_rate, double phi_rate);

/// Ideal adiabatic evolution sum_n e^{-i alpha_n + i gamma_n} |phi_n(t)><phi_n(0)|
/// in the lab basis {|e>, |0>, |1>}. t in seconds.
CMatrix adiabatic_operator(const Schedule& schedule, double t);

/// Transition Hamiltonian in the initial eigenbasis, per second, at time t.
CMatrix transition_hamiltonian_at(const Schedule& schedule, double t);

/// Transition Hamiltonian in s units at scaled time s in [0, 1].
CMatrix transition_hamiltonian(const Schedule& schedule, double s);

struct PGFactors {
  CMatrix p;  // unit-modulus phase factors P_kj (diagonal set to 1)
  CMatrix g;  // couplings G_kj in s units
};

/// Splits the transition Hamiltonian at scaled time s as H_T = P o G (entrywise, off-diagonal).
PGFactors pg_decompose(const Schedule& schedule, double s);

struct QuadratureOptions {
  int points_per_unit_s = 2000;
  double richardson_tol = 1e-6;
  int max_points_per_unit_s = 1 << 22;
  /// Stored samples are thinned to roughly this many; integrals always use
  /// the full grid.
  std::size_t max_samples = 4097;
};

struct TransitionSample {
  double s = 0.0;
  std::size_t segment = 0;
  CMatrix h_t;  // s units
  CMatrix f;    // integral of h_t over [0, s]
};

struct TransitionReport {
  std::vector<TransitionSample> samples;
  double max_f_norm = 0.0;
  double tau = 0.0;
  /// Largest HS norm of the coupling matrix (off-diagonal part) seen along the path.
  double max_coupling_norm = 0.0;
  int points_per_unit_s = 0;
  double richardson_change = 0.0;
  bool converged = false;
  /// F(1), and integral_0^1 ||H_T|| ||F|| ds on the full grid.
  CMatrix final_f;
  double norm_product_integral = 0.0;
};

/// F_kj(s) = integral_0^s H_T,kj on a grid refined until doubling the grid
/// changes max_s ||F(s)|| by less than the relative tolerance.
TransitionReport f_integral(const Schedule& schedule, const QuadratureOptions& options = {});

struct ScalarIntegralReport {
  double max_abs = 0.0;
  double argmax_s = 0.0;
  int points_per_unit_s = 0;
  bool converged = false;
};

/// max_s |integral_0^s f(s') ds'| for a scalar integrand on [0, 1].
ScalarIntegralReport max_abs_integral(const std::function<Complex(double)>& integrand,
                                      const QuadratureOptions& options = {});

/// The pure-phase toy integrand e^{i a s} with a = tau * delta_e.
ScalarIntegralReport phase_integral(double tau_delta_e, const QuadratureOptions& options = {});

/// ||F(1)|| + integral_0^1 ||H_T(s)|| ||F(s)|| ds, an upper bound on ||U_T(1) - I||.
double dyson_bound(const TransitionReport& report);

/// A constant-rate geodesic piece of the control path, on scaled time s in [0, 1].
struct GeodesicRamp {
  double theta_start = 0.0;
  double theta_end = 0.0;
  double phi_start = 0.0;
  double phi_end = 0.0;
};

/// Instantaneous sign flip of the P factors of selected eigenpairs at scaled time s.
struct FlipEvent {
  double s = 0.0;
  bool plus_minus = false;
  bool plus_dark = false;
  bool minus_dark = false;
};

/// Flip pattern of an area-pi burst: both bright-dark pairs flip.
FlipEvent pi_flip(double s);
/// Flip pattern of an area-pi/2 burst: only the bright-bright pair flips.
FlipEvent half_pi_flip(double s);

/// Midpoint flips of a ramp split into n equal pieces.
std::vector<FlipEvent> midpoint_flips(int n, bool bright_bright);

/// Toggling-frame transition operator at s = 1 for one ramp (no dynamical
/// phase between flips), as an ordered product of exponentials of H_T slices.
/// Returned in the initial eigenbasis. Flips must be sorted and lie in [0, 1].
CMatrix transition_operator(const GeodesicRamp& ramp, std::span<const FlipEvent> flips);

struct TogglingOptions {
  int min_slices = 64;
  double max_phase_step = 1e-2;  // rad of P or G change per slice
};

/// Transition operator U_T(t) of a full schedule in the initial eigenbasis,
/// integrated in the toggling frame with the schedule's own phases.
/// Segments along which H_T is constant are taken in a single exact step.
CMatrix transition_operator(const Schedule& schedule, double t, const TogglingOptions& options = {});

/// Lab-basis operator U_A(t) V0 U_T V0^dagger, V0 the initial eigenframe.
CMatrix compose_frame(const Schedule& schedule, double t, const CMatrix& u_t_eigenbasis);

}  // namespace holopi::adiabatic
