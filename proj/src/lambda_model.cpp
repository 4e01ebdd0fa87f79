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

#include "holopi/lambda_model.hpp"

#include <algorithm>
#include <cmath>

namespace holopi::lambda {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace

CMatrix EigenFrame::matrix() const {
  CMatrix m(3, 3);
  for (int k = 0; k < 3; ++k) m.col(k) = vectors[k];
  return m;
}

CMatrix hamiltonian(const ControlPoint& c) {
  const Complex to_zero = c.omega * std::sin(c.theta / 2) * std::exp(kI * c.phi);
  const Complex to_one = -c.omega * std::cos(c.theta / 2);
  CMatrix h = CMatrix::Zero(3, 3);
  h(kExcited, kZero) = to_zero;
  h(kZero, kExcited) = std::conj(to_zero);
  h(kExcited, kOne) = to_one;
  h(kOne, kExcited) = std::conj(to_one);
  return h;
}

EigenFrame eigenframe(double theta, double phi) {
  const double s = std::sin(theta / 2);
  const double c = std::cos(theta / 2);
  const Complex e_minus_phi = std::exp(-kI * phi);
  const double r = 1.0 / std::sqrt(2.0);

  EigenFrame f;
  f.vectors[0] = CVector(3);
  f.vectors[0] << r, r * s * e_minus_phi, -r * c;
  f.vectors[1] = CVector(3);
  f.vectors[1] << -r, r * s * e_minus_phi, -r * c;
  f.vectors[2] = CVector(3);
  f.vectors[2] << 0.0, c, s * std::exp(kI * phi);
  return f;
}

EigenFrame eigenframe(const ControlPoint& c) {
  EigenFrame f = eigenframe(c.theta, c.phi);
  f.energies = {c.omega, -c.omega, 0.0};
  return f;
}

double segment_gamma_plus(const Segment& segment, double u) {
  if (segment.duration <= 0.0 || u <= 0.0) return 0.0;
  const double phi_rate = segment.phi_rate();
  if (phi_rate == 0.0) return 0.0;
  // integral of (phi'/2) sin^2(theta/2) with theta linear in time
  const double half_sweep = 0.5 * segment.theta_rate() * u;
  const double mean_cos = std::cos(segment.theta_start + half_sweep) * sinc(half_sweep);
  return 0.25 * phi_rate * u * (1.0 - mean_cos);
}

PhaseRecord accumulate_phases(const Schedule& schedule, double t) {
  if (t < 0.0 || t > schedule.duration() * (1.0 + 1e-12) + 1e-300) {
    throw ScheduleError("accumulate_phases: time outside schedule");
  }
  double area = 0.0;
  double gamma = 0.0;
  const auto& segs = schedule.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const double start = schedule.start_time(i);
    if (start >= t && (segs[i].duration > 0.0 || start > t)) break;
    const double u = std::clamp(t - start, 0.0, segs[i].duration);
    area += segs[i].omega * u;
    gamma += segment_gamma_plus(segs[i], u);
  }
  PhaseRecord rec;
  rec.alpha = {area, -area, 0.0};
  rec.gamma = {gamma, gamma, -2.0 * gamma};
  return rec;
}

CMatrix holonomy_gate(double theta0, double phi0, double gamma_plus) {
  const double s2 = std::pow(std::sin(theta0 / 2), 2);
  const double c2 = std::pow(std::cos(theta0 / 2), 2);
  const Complex bright = std::exp(kI * gamma_plus);
  const Complex dark = std::exp(-2.0 * kI * gamma_plus);
  const Complex off = 0.5 * std::sin(theta0) * (dark - bright);

  CMatrix u(2, 2);
  u(0, 0) = bright * s2 + dark * c2;
  u(0, 1) = off * std::exp(-kI * phi0);
  u(1, 0) = off * std::exp(kI * phi0);
  u(1, 1) = bright * c2 + dark * s2;
  return u;
}

CMatrix loop_unitary_3level(double theta0, double phi0, double gamma_plus) {
  CMatrix u = CMatrix::Zero(3, 3);
  u(kExcited, kExcited) = std::exp(kI * gamma_plus);
  u.block(1, 1, 2, 2) = holonomy_gate(theta0, phi0, gamma_plus);
  return u;
}

}  // namespace holopi::lambda
