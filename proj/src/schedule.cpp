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

#include "holopi/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "holopi/lambda_model.hpp"

namespace holopi::schedule {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kAngleTol = 1e-9;
constexpr double kAreaTol = 1e-9;

double wrap_pi(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

void validate(double theta0, double gamma_plus, const PlanOptions& o, bool two_qubit) {
  if (!(theta0 >= 0.0 && theta0 <= kPi)) throw PlanError("theta0 must lie in [0, pi]");
  if (!std::isfinite(gamma_plus)) throw PlanError("gamma_plus must be finite");
  for (std::size_t k = 0; k < o.n_per_step.size(); ++k) {
    if (two_qubit && k == 3) continue;
    if (o.n_per_step[k] < 1) {
      throw PlanError("step " + std::to_string(k + 1) + " needs at least one piece");
    }
  }
  if (!(o.omega > 0.0)) throw PlanError("burst envelope must be positive");
  if (!(o.ramp_rate > 0.0)) throw PlanError("ramp rate must be positive");
  if (!(o.step4_duration >= 0.0)) throw PlanError("step-4 duration must be non-negative");
  if (!(o.burst_quantum >= 0.0)) throw PlanError("burst quantum must be non-negative");
}

class Builder {
 public:
  explicit Builder(const PlanOptions& o) : o_(o) {}

  // Geodesic move from the current point, cut into n pieces with a burst of
  // the given area at each piece midpoint.
  void geodesic(int step, double theta_to, double phi_to, int n, double area) {
    const double dtheta = theta_to - theta_;
    const double dphi = phi_to - phi_;
    const double length = std::abs(dtheta) + std::abs(dphi);
    if (length == 0.0) return;
    const std::string prefix = "s" + std::to_string(step);
    const double piece_time = length / o_.ramp_rate / n;

    if (o_.mode == PulseMode::Continuous) {
      for (int k = 0; k < n; ++k) {
        const double th = theta_ + dtheta / n;
        const double ph = phi_ + dphi / n;
        push({piece_time, area / piece_time, theta_, th, phi_, ph, prefix + ".drive"});
      }
      return;
    }

    const auto [burst_time, burst_omega] = burst(area);
    const double theta_start = theta_;
    const double phi_start = phi_;
    for (int k = 0; k < n; ++k) {
      const double x = (k + 0.5) / n;
      const double lead = k == 0 ? 0.5 * piece_time : piece_time;
      ramp_to(theta_start + dtheta * x, phi_start + dphi * x, lead, prefix + ".ramp");
      push({burst_time, burst_omega, theta_, theta_, phi_, phi_, prefix + ".pulse"});
    }
    ramp_to(theta_to, phi_to, 0.5 * piece_time, prefix + ".ramp");
  }

  void reset_phi(double phi_to, double duration, bool emit) {
    if (emit) push({duration, 0.0, theta_, theta_, phi_, phi_to, "s4.reset"});
    phi_ = phi_to;
  }

  // Pads the area so that, once `pending` more area is added, the total is
  // a multiple of 2 pi.
  void closure_burst(double pending) {
    const double rem = std::fmod(area_ + pending, kTwoPi);
    const double need = kTwoPi - rem;
    if (rem < kAreaTol || need < kAreaTol) return;
    const auto [time, omega] = burst(need);
    push({time, omega, theta_, theta_, phi_, phi_, "closure.pulse"});
  }

  void start(double theta, double phi) {
    theta_ = theta;
    phi_ = phi;
  }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Schedule finish() { return Schedule(std::move(segments_)); }

 private:
  std::pair<double, double> burst(double area) const {
    double time = area / o_.omega;
    if (o_.burst_quantum > 0.0) {
      time = std::max(1.0, std::ceil(time / o_.burst_quantum - 1e-9)) * o_.burst_quantum;
    }
    return {time, area / time};
  }

  void ramp_to(double theta, double phi, double duration, const std::string& tag) {
    push({duration, 0.0, theta_, theta, phi_, phi, tag});
  }

  void push(Segment s) {
    area_ += s.omega * s.duration;
    theta_ = s.theta_end;
    phi_ = s.phi_end;
    segments_.push_back(std::move(s));
  }

  const PlanOptions& o_;
  std::vector<Segment> segments_;
  double theta_ = 0.0;
  double phi_ = 0.0;
  double area_ = 0.0;
};

Schedule plan_loop(double theta0, double phi0, double gamma_plus, const PlanOptions& o,
                   bool two_qubit) {
  validate(theta0, gamma_plus, o, two_qubit);
  const auto& n = o.n_per_step;
  Builder b(o);
  b.start(theta0, phi0);
  b.geodesic(1, kPi, phi0, n[0], kPiBurstArea);
  b.geodesic(2, kPi, phi0 + 2.0 * gamma_plus, n[1], kHalfPiBurstArea);
  b.geodesic(3, 0.0, b.phi(), n[2], kPiBurstArea);
  const bool step5_moves = theta0 != 0.0;
  b.closure_burst(step5_moves ? n[4] * kPiBurstArea : 0.0);
  const bool emit_reset = !two_qubit && o.include_step4 && b.phi() != phi0;
  b.reset_phi(phi0, o.step4_duration, emit_reset);
  b.geodesic(5, theta0, phi0, n[4], kPiBurstArea);
  return b.finish();
}

}  // namespace

Schedule plan_single_qubit(double theta0, double phi0, double gamma_plus, const PlanOptions& options) {
  return plan_loop(theta0, phi0, gamma_plus, options, false);
}

PlanOptions two_qubit_plan_options(double omega_eff) {
  PlanOptions o;
  o.n_per_step = {3, 5, 3, 1, 3};
  o.omega = omega_eff;
  o.include_step4 = false;
  return o;
}

Schedule plan_two_qubit(double theta0, double phi0, double gamma_plus, const PlanOptions& options) {
  return plan_loop(theta0, phi0, gamma_plus, options, true);
}

AuditReport audit(const Schedule& schedule) {
  AuditReport r;
  const auto& segs = schedule.segments();
  if (segs.empty()) {
    r.violations.push_back("empty schedule");
    return r;
  }
  auto phi_free = [](double theta) { return std::abs(std::sin(theta / 2)) < kAngleTol; };
  auto same_phi = [](double a, double b) { return std::abs(wrap_pi(a - b)) < kAngleTol; };

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    const std::string where = "segment " + std::to_string(i) + " (" + s.tag + ")";
    for (double th : {s.theta_start, s.theta_end}) {
      if (th < -kAngleTol || th > kPi + kAngleTol) {
        r.violations.push_back(where + ": theta outside [0, pi]");
        break;
      }
    }
    if (s.duration == 0.0 && s.theta_start != s.theta_end) {
      r.violations.push_back(where + ": theta jumps within a zero-length segment");
    }
    if (s.duration == 0.0 && !same_phi(s.phi_start, s.phi_end) && !phi_free(s.theta_start)) {
      r.violations.push_back(where + ": phi jumps within a zero-length segment");
    }
    if (i + 1 < segs.size()) {
      const auto& next = segs[i + 1];
      if (std::abs(s.theta_end - next.theta_start) > kAngleTol) {
        r.violations.push_back(where + ": theta discontinuous at the next segment");
      } else if (!same_phi(s.phi_end, next.phi_start) && !phi_free(s.theta_end)) {
        r.violations.push_back(where + ": phi discontinuous at the next segment");
      }
    }
    r.total_area += s.area();
    r.duration += s.duration;

    const std::string step = s.tag.substr(0, s.tag.find('.'));
    auto it = std::find_if(r.steps.begin(), r.steps.end(),
                           [&](const StepSummary& x) { return x.step == step; });
    if (it == r.steps.end()) {
      r.steps.push_back({step, 0.0, 0.0, 0});
      it = std::prev(r.steps.end());
    }
    it->area += s.area();
    it->duration += s.duration;
    if (s.omega > 0.0 && s.frozen()) ++it->bursts;
  }

  const auto& first = segs.front();
  const auto& last = segs.back();
  if (std::abs(first.theta_start - last.theta_end) > kAngleTol ||
      (!same_phi(first.phi_start, last.phi_end) && !phi_free(first.theta_start))) {
    r.violations.push_back("loop is not closed: end point differs from start point");
  }

  r.area_mod_2pi = wrap_pi(r.total_area);
  if (std::abs(r.area_mod_2pi) > kAreaTol) {
    r.violations.push_back("total pulse area is not a multiple of 2 pi (residual " +
                           format_double(r.area_mod_2pi) + " rad)");
  }
  if (schedule.duration() > 0.0) {
    r.gamma_plus = lambda::accumulate_phases(schedule, schedule.duration()).gamma[0];
  }
  return r;
}

Schedule slow_ramp(double omega, double theta_start, double theta_end, double phi, double duration) {
  return Schedule({Segment{duration, omega, theta_start, theta_end, phi, phi, "ramp"}});
}

}  // namespace holopi::schedule
