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

#include "holopi/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holopi::adiabatic {

using lambda::PhaseRecord;

CMatrix nonadiabatic_couplings(double theta, double phi, double theta_rate, double phi_rate) {
  const double s = std::sin(theta / 2);
  const double s2 = s * s;
  const Complex e_phi = std::exp(kI * phi);
  const Complex bright_dark =
      e_phi / (2.0 * std::sqrt(2.0)) * (kI * theta_rate - phi_rate * std::sin(theta));
  const double bright_bright = -0.5 * phi_rate * s2;

  CMatrix g(3, 3);
  g(0, 0) = bright_bright;
  g(0, 1) = bright_bright;
  g(1, 0) = bright_bright;
  g(1, 1) = bright_bright;
  g(0, 2) = bright_dark;
  g(1, 2) = bright_dark;
  g(2, 0) = std::conj(bright_dark);
  g(2, 1) = std::conj(bright_dark);
  g(2, 2) = phi_rate * s2;
  return g;
}

namespace {

// Two-exponential fourth-order Magnus step at the Gauss points.
const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kMagnusA = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kMagnusB = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

PhaseRecord advance(const PhaseRecord& start, const Segment& seg, double u) {
  const double area = start.alpha[0] + seg.omega * u;
  const double gamma = start.gamma[0] + lambda::segment_gamma_plus(seg, u);
  PhaseRecord rec;
  rec.alpha = {area, -area, 0.0};
  rec.gamma = {gamma, gamma, -2.0 * gamma};
  return rec;
}

CMatrix phase_factors(const PhaseRecord& rec) {
  CMatrix p(3, 3);
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      p(k, j) = std::exp(kI * (rec.alpha[k] - rec.alpha[j]) + kI * (rec.gamma[j] - rec.gamma[k]));
    }
  }
  return p;
}

// Off-diagonal entrywise product; the diagonal of H_T vanishes identically.
CMatrix assemble(const CMatrix& p, const CMatrix& g) {
  CMatrix h = p.cwiseProduct(g);
  h.diagonal().setZero();
  return h;
}

// H_T per second at local time u of segment seg, given phases at segment start.
CMatrix segment_transition(const Segment& seg, const PhaseRecord& start, double u) {
  const ControlPoint c = seg.at(u);
  const CMatrix g = nonadiabatic_couplings(c.theta, c.phi, seg.theta_rate(), seg.phi_rate());
  return assemble(phase_factors(advance(start, seg, u)), g);
}

std::vector<PhaseRecord> segment_start_phases(const Schedule& schedule) {
  std::vector<PhaseRecord> out;
  out.reserve(schedule.size());
  PhaseRecord rec;
  for (const auto& seg : schedule.segments()) {
    out.push_back(rec);
    rec = advance(rec, seg, seg.duration);
  }
  return out;
}

double checked_tau(const Schedule& schedule) {
  const double tau = schedule.duration();
  if (!(tau > 0.0)) throw std::invalid_argument("schedule must have positive total duration");
  return tau;
}

}  // namespace

CMatrix adiabatic_operator(const Schedule& schedule, double t) {
  const PhaseRecord rec = lambda::accumulate_phases(schedule, t);
  const ControlPoint now = schedule.at(t);
  const ControlPoint start = schedule.at(0.0);
  const auto frame_now = lambda::eigenframe(now.theta, now.phi);
  const auto frame_start = lambda::eigenframe(start.theta, start.phi);

  CMatrix u = CMatrix::Zero(3, 3);
  for (int n = 0; n < 3; ++n) {
    const Complex phase = std::exp(-kI * rec.alpha[n] + kI * rec.gamma[n]);
    u += phase * frame_now.vectors[n] * frame_start.vectors[n].adjoint();
  }
  return u;
}

CMatrix transition_hamiltonian_at(const Schedule& schedule, double t) {
  const std::size_t i = schedule.locate(t);
  const auto& seg = schedule.segments()[i];
  const double u = t - schedule.start_time(i);
  const PhaseRecord start = lambda::accumulate_phases(schedule, schedule.start_time(i));
  return segment_transition(seg, start, u);
}

CMatrix transition_hamiltonian(const Schedule& schedule, double s) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("scaled time must lie in [0, 1]");
  const double tau = checked_tau(schedule);
  return tau * transition_hamiltonian_at(schedule, s * tau);
}

PGFactors pg_decompose(const Schedule& schedule, double s) {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("scaled time must lie in [0, 1]");
  const double tau = checked_tau(schedule);
  const double t = s * tau;
  const std::size_t i = schedule.locate(t);
  const auto& seg = schedule.segments()[i];
  const double u = t - schedule.start_time(i);
  const ControlPoint c = seg.at(u);
  PGFactors out;
  out.p = phase_factors(lambda::accumulate_phases(schedule, t));
  out.g = tau * nonadiabatic_couplings(c.theta, c.phi, seg.theta_rate(), seg.phi_rate());
  return out;
}

namespace {

struct SweepResult {
  double max_f_norm = 0.0;
  double max_coupling_norm = 0.0;
  double norm_product_integral = 0.0;
  CMatrix final_f;
  std::vector<TransitionSample> samples;
};

long segment_pairs(const Segment& seg, double tau, int points_per_unit_s) {
  return std::max(1L, static_cast<long>(std::ceil(points_per_unit_s * (seg.duration / tau) / 2.0)));
}

SweepResult sweep_transition(const Schedule& schedule, int points_per_unit_s, bool keep,
                             std::size_t max_samples = 4097) {
  const double tau = schedule.duration();
  const auto starts = segment_start_phases(schedule);
  SweepResult out;
  CMatrix f = CMatrix::Zero(3, 3);
  const auto& segs = schedule.segments();
  long total_pairs = 0;
  for (const auto& seg : segs) {
    if (seg.duration > 0.0) total_pairs += segment_pairs(seg, tau, points_per_unit_s);
  }
  const long stride = std::max(1L, total_pairs / static_cast<long>(std::max<std::size_t>(max_samples, 1)));
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    if (seg.duration <= 0.0) continue;
    const long pairs = segment_pairs(seg, tau, points_per_unit_s);
    const double h_u = seg.duration / (2.0 * pairs);
    const double s0 = schedule.start_time(i) / tau;

    auto eval = [&](double u) { return CMatrix(tau * segment_transition(seg, starts[i], u)); };
    {
      const ControlPoint c = seg.at(0.0);
      CMatrix g = nonadiabatic_couplings(c.theta, c.phi, seg.theta_rate(), seg.phi_rate());
      g.diagonal().setZero();
      out.max_coupling_norm = std::max(out.max_coupling_norm, tau * hs_norm(g));
    }
    CMatrix left = eval(0.0);
    double left_product = hs_norm(left) * hs_norm(f);
    if (keep) out.samples.push_back({s0, i, left, f});
    for (long k = 0; k < pairs; ++k) {
      const double u0 = 2.0 * k * h_u;
      const CMatrix mid = eval(u0 + h_u);
      const CMatrix right = eval(u0 + 2.0 * h_u);
      f += (h_u / tau) / 3.0 * (left + 4.0 * mid + right);
      const double f_norm = hs_norm(f);
      out.max_f_norm = std::max(out.max_f_norm, f_norm);
      const double right_product = hs_norm(right) * f_norm;
      out.norm_product_integral += (h_u / tau) * (left_product + right_product);
      left_product = right_product;
      if (keep && ((k + 1) % stride == 0 || k + 1 == pairs)) {
        out.samples.push_back({s0 + (u0 + 2.0 * h_u) / tau, i, right, f});
      }
      left = right;
    }
  }
  out.final_f = f;
  return out;
}

}  // namespace

TransitionReport f_integral(const Schedule& schedule, const QuadratureOptions& options) {
  const double tau = checked_tau(schedule);
  if (options.points_per_unit_s < 2) throw std::invalid_argument("quadrature grid too coarse");

  int m = options.points_per_unit_s;
  SweepResult coarse = sweep_transition(schedule, m, false);
  TransitionReport report;
  report.tau = tau;
  while (true) {
    const int finer = 2 * m;
    SweepResult fine = sweep_transition(schedule, finer, false);
    const double denom = std::max(fine.max_f_norm, 1e-300);
    const double change = std::abs(fine.max_f_norm - coarse.max_f_norm) / denom;
    const bool ok = change < options.richardson_tol || fine.max_f_norm == 0.0;
    if (ok || finer >= options.max_points_per_unit_s) {
      SweepResult kept = sweep_transition(schedule, finer, true, options.max_samples);
      report.samples = std::move(kept.samples);
      report.final_f = std::move(kept.final_f);
      report.norm_product_integral = kept.norm_product_integral;
      report.max_f_norm = kept.max_f_norm;
      report.max_coupling_norm = kept.max_coupling_norm;
      report.points_per_unit_s = finer;
      report.richardson_change = fine.max_f_norm == 0.0 ? 0.0 : change;
      report.converged = ok;
      return report;
    }
    coarse = std::move(fine);
    m = finer;
  }
}

namespace {

ScalarIntegralReport sweep_scalar(const std::function<Complex(double)>& integrand, int m) {
  const long pairs = std::max(1L, static_cast<long>(std::ceil(m / 2.0)));
  const double h = 1.0 / (2.0 * pairs);
  ScalarIntegralReport out;
  out.points_per_unit_s = m;
  Complex acc = 0.0;
  Complex left = integrand(0.0);
  for (long k = 0; k < pairs; ++k) {
    const double s0 = 2.0 * k * h;
    const Complex mid = integrand(s0 + h);
    const Complex right = integrand(s0 + 2.0 * h);
    acc += h / 3.0 * (left + 4.0 * mid + right);
    if (std::abs(acc) > out.max_abs) {
      out.max_abs = std::abs(acc);
      out.argmax_s = s0 + 2.0 * h;
    }
    left = right;
  }
  return out;
}

}  // namespace

ScalarIntegralReport max_abs_integral(const std::function<Complex(double)>& integrand,
                                      const QuadratureOptions& options) {
  int m = options.points_per_unit_s;
  ScalarIntegralReport coarse = sweep_scalar(integrand, m);
  while (true) {
    ScalarIntegralReport fine = sweep_scalar(integrand, 2 * m);
    const double change = std::abs(fine.max_abs - coarse.max_abs) / std::max(fine.max_abs, 1e-300);
    fine.converged = change < options.richardson_tol || fine.max_abs == 0.0;
    if (fine.converged || 2 * m >= options.max_points_per_unit_s) return fine;
    coarse = fine;
    m *= 2;
  }
}

ScalarIntegralReport phase_integral(double tau_delta_e, const QuadratureOptions& options) {
  return max_abs_integral([tau_delta_e](double s) { return std::exp(kI * tau_delta_e * s); },
                          options);
}

double dyson_bound(const TransitionReport& report) {
  if (report.final_f.size() == 0) return 0.0;
  return hs_norm(report.final_f) + report.norm_product_integral;
}

FlipEvent pi_flip(double s) { return {s, false, true, true}; }

FlipEvent half_pi_flip(double s) { return {s, true, false, false}; }

std::vector<FlipEvent> midpoint_flips(int n, bool bright_bright) {
  if (n < 1) throw std::invalid_argument("need at least one segment");
  std::vector<FlipEvent> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = (k + 0.5) / n;
    out.push_back(bright_bright ? half_pi_flip(s) : pi_flip(s));
  }
  return out;
}

CMatrix transition_operator(const GeodesicRamp& ramp, std::span<const FlipEvent> flips) {
  double last = 0.0;
  for (const auto& f : flips) {
    if (f.s < last || f.s > 1.0) {
      throw std::invalid_argument("flip events must be sorted and lie within the ramp");
    }
    last = f.s;
  }
  const Segment path{1.0, 0.0, ramp.theta_start, ramp.theta_end, ramp.phi_start, ramp.phi_end, {}};
  const double theta_rate = path.theta_rate();
  const double phi_rate = path.phi_rate();
  const bool constant =
      phi_rate == 0.0 || (theta_rate == 0.0 && std::abs(std::sin(ramp.theta_start)) < 1e-12);
  const int slices = constant ? 1 : 512;

  CMatrix sign = CMatrix::Ones(3, 3);
  auto toggle = [&sign](int k, int j) {
    sign(k, j) = -sign(k, j);
    sign(j, k) = -sign(j, k);
  };

  CMatrix u = CMatrix::Identity(3, 3);
  auto run = [&](double a, double b) {
    if (b <= a) return;
    const double ds = (b - a) / slices;
    auto h_at = [&](double s) {
      const ControlPoint c = path.at(s);
      const double gamma = lambda::segment_gamma_plus(path, s);
      PhaseRecord rec;
      rec.gamma = {gamma, gamma, -2.0 * gamma};
      const CMatrix p = sign.cwiseProduct(phase_factors(rec));
      return assemble(p, nonadiabatic_couplings(c.theta, c.phi, theta_rate, phi_rate));
    };
    for (int k = 0; k < slices; ++k) {
      const double s0 = a + k * ds;
      if (constant) {
        u = expm_skew(h_at(s0 + 0.5 * ds), ds) * u;
        continue;
      }
      const CMatrix h1 = h_at(s0 + (0.5 - kGaussOffset) * ds);
      const CMatrix h2 = h_at(s0 + (0.5 + kGaussOffset) * ds);
      u = expm_skew(kMagnusA * h1 + kMagnusB * h2, ds) * expm_skew(kMagnusB * h1 + kMagnusA * h2, ds) * u;
    }
  };

  double s = 0.0;
  for (const auto& f : flips) {
    run(s, f.s);
    if (f.plus_minus) toggle(0, 1);
    if (f.plus_dark) toggle(0, 2);
    if (f.minus_dark) toggle(1, 2);
    s = f.s;
  }
  run(s, 1.0);
  return u;
}

CMatrix transition_operator(const Schedule& schedule, double t, const TogglingOptions& options) {
  if (t < 0.0 || t > schedule.duration() * (1.0 + 1e-12)) {
    throw std::invalid_argument("transition_operator: time outside schedule");
  }
  const auto starts = segment_start_phases(schedule);
  CMatrix u = CMatrix::Identity(3, 3);
  const auto& segs = schedule.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& seg = segs[i];
    const double t0 = schedule.start_time(i);
    if (t0 >= t) break;
    const double span = std::min(seg.duration, t - t0);
    if (span <= 0.0 || seg.frozen()) continue;

    const double theta_rate = seg.theta_rate();
    const double phi_rate = seg.phi_rate();
    const bool constant =
        seg.omega == 0.0 &&
        (phi_rate == 0.0 || (theta_rate == 0.0 && std::abs(std::sin(seg.theta_start)) < 1e-12));
    long slices = 1;
    if (!constant) {
      const double rate = 2.0 * seg.omega + 3.0 * std::abs(phi_rate) + std::abs(theta_rate);
      slices = std::max<long>(options.min_slices,
                              static_cast<long>(std::ceil(rate * span / options.max_phase_step)));
    }
    const double dt = span / slices;
    if (constant) {
      u = expm_skew(segment_transition(seg, starts[i], 0.5 * dt), dt) * u;
      continue;
    }
    for (long k = 0; k < slices; ++k) {
      const CMatrix h1 = segment_transition(seg, starts[i], (k + 0.5 - kGaussOffset) * dt);
      const CMatrix h2 = segment_transition(seg, starts[i], (k + 0.5 + kGaussOffset) * dt);
      u = expm_skew(kMagnusA * h1 + kMagnusB * h2, dt) * expm_skew(kMagnusB * h1 + kMagnusA * h2, dt) * u;
    }
  }
  return u;
}

CMatrix compose_frame(const Schedule& schedule, double t, const CMatrix& u_t_eigenbasis) {
  const ControlPoint start = schedule.at(0.0);
  const CMatrix v0 = lambda::eigenframe(start.theta, start.phi).matrix();
  return adiabatic_operator(schedule, t) * v0 * u_t_eigenbasis * v0.adjoint();
}

}  // namespace holopi::adiabatic
