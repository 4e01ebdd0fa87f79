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

#include "holopi/propagate.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "holopi/lambda_model.hpp"

namespace holopi::propagate {

bool HamiltonianModel::constant_over(const Segment& s) const {
  if (s.omega == 0.0) return true;
  return autonomous() && s.frozen();
}

std::vector<std::string> HamiltonianModel::labels() const {
  std::vector<std::string> out;
  for (Eigen::Index k = 0; k < dim(); ++k) out.push_back("b" + std::to_string(k));
  return out;
}

LambdaModel::LambdaModel(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() != 3) throw PropagationError("Lambda model needs three basis labels");
}

CMatrix LambdaModel::hamiltonian(const ControlPoint& c, double) const {
  return lambda::hamiltonian(c);
}

namespace {

constexpr double kPeriodicMaxFraction = 1.0 / 100.0;
constexpr double kPeriodicDefaultFraction = 1.0 / 128.0;

// Polar factor; strips the roundoff drift of long exponential products.
CMatrix nearest_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix matrix_power(CMatrix base, long n) {
  CMatrix result = CMatrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = base * result;
    base = base * base;
    n >>= 1;
  }
  return result;
}

// Gauss-point weights of the two-exponential fourth-order Magnus step.
const double kGaussOffset = std::sqrt(3.0) / 6.0;
const double kMagnusA = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kMagnusB = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

class Pass {
 public:
  Pass(const Schedule& schedule, const HamiltonianModel& model, const EvolveOptions& options,
       double t_begin, double t_end, double scale)
      : schedule_(schedule), model_(model), opt_(options), t_begin_(t_begin), t_end_(t_end),
        scale_(scale) {}

  void enable_trace(std::vector<double> times, CVector psi0, CVector target) {
    times_ = std::move(times);
    psi0_ = std::move(psi0);
    target_ = std::move(target);
    tracing_ = true;
  }

  CMatrix run() {
    const Eigen::Index n = model_.dim();
    CMatrix u = CMatrix::Identity(n, n);
    const auto& segs = schedule_.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& seg = segs[i];
      const double start = schedule_.start_time(i);
      const double a = std::max(0.0, t_begin_ - start);
      const double b = std::min(seg.duration, t_end_ - start);
      if (b <= a) continue;
      if (model_.constant_over(seg)) {
        run_constant(seg, start, a, b, u);
      } else if (!model_.autonomous() && model_.period() && seg.frozen()) {
        run_periodic(seg, start, a, b, u);
      } else {
        run_stepped(seg, start, a, b, u);
      }
    }
    flush(t_end_, u);
    return u;
  }

  std::vector<TraceRow> take_trace() { return std::move(trace_); }
  double used_step() const { return used_step_; }
  bool varying() const { return varying_; }

 private:
  bool magnus(bool periodic) const {
    return opt_.integrator == Integrator::Magnus4 ||
           (opt_.integrator == Integrator::Auto && periodic);
  }

  // Propagator over [u0, u0 + dt] of segment-local time; `start` is the
  // segment's absolute start.
  CMatrix step(const Segment& seg, double start, double u0, double dt, bool periodic) const {
    if (!magnus(periodic)) {
      const double m = u0 + 0.5 * dt;
      return expm_skew(model_.hamiltonian(seg.at(m), start + m), dt);
    }
    const double m1 = u0 + (0.5 - kGaussOffset) * dt;
    const double m2 = u0 + (0.5 + kGaussOffset) * dt;
    const CMatrix h1 = model_.hamiltonian(seg.at(m1), start + m1);
    const CMatrix h2 = model_.hamiltonian(seg.at(m2), start + m2);
    return expm_skew(kMagnusA * h1 + kMagnusB * h2, dt) * expm_skew(kMagnusB * h1 + kMagnusA * h2, dt);
  }

  double step_for(const Segment& seg) const {
    if (opt_.substep > 0.0) return opt_.substep * scale_;
    return seg.duration / opt_.default_divisions * scale_;
  }

  // Records every pending sample time up to and including t, at state u.
  void flush(double t, const CMatrix& u) {
    while (tracing_ && next_ < times_.size() && times_[next_] <= t) {
      record(times_[next_], u);
      ++next_;
    }
  }

  bool pending_before(double t) const {
    return tracing_ && next_ < times_.size() && times_[next_] < t;
  }

  void record(double t, const CMatrix& u) {
    const CVector psi = u * psi0_;
    TraceRow row;
    row.t = t;
    row.populations.resize(psi.size());
    for (Eigen::Index k = 0; k < psi.size(); ++k) row.populations[k] = std::norm(psi(k));
    row.fidelity = state_fidelity(target_, psi);
    trace_.push_back(std::move(row));
  }

  void run_constant(const Segment& seg, double start, double a, double b, CMatrix& u) {
    const double mid = 0.5 * (a + b);
    const CMatrix h = model_.hamiltonian(seg.at(mid), start + mid);
    while (pending_before(start + b)) {
      const double ts = std::max(times_[next_], start + a);
      record(times_[next_], expm_skew(h, ts - (start + a)) * u);
      ++next_;
    }
    u = expm_skew(h, b - a) * u;
  }

  void run_stepped(const Segment& seg, double start, double a, double b, CMatrix& u) {
    varying_ = true;
    const long steps = std::max(1L, static_cast<long>(std::ceil((b - a) / step_for(seg))));
    const double dt = (b - a) / steps;
    used_step_ = std::max(used_step_, dt);
    for (long j = 0; j < steps; ++j) {
      const double u0 = a + j * dt;
      while (pending_before(start + u0 + dt)) {
        const double ts = std::max(times_[next_], start + u0);
        record(times_[next_], step(seg, start, u0, ts - (start + u0), false) * u);
        ++next_;
      }
      u = step(seg, start, u0, dt, false) * u;
    }
  }

  void run_periodic(const Segment& seg, double start, double a, double b, CMatrix& u) {
    varying_ = true;
    const double period = *model_.period();
    const double requested = opt_.substep > 0.0 ? opt_.substep * scale_
                                                : period * kPeriodicDefaultFraction * scale_;
    const double h_max = std::min(requested, period * kPeriodicMaxFraction);
    const long m = std::max(1L, static_cast<long>(std::ceil(period / h_max)));
    const double dt = period / m;
    used_step_ = std::max(used_step_, dt);
    const double t0 = start + a;

    std::vector<CMatrix> partial;
    partial.reserve(m + 1);
    partial.push_back(CMatrix::Identity(u.rows(), u.cols()));
    for (long j = 0; j < m; ++j) {
      partial.push_back(step(seg, start, a + j * dt, dt, true) * partial.back());
    }
    partial.back() = nearest_unitary(partial.back());
    const CMatrix& one_period = partial.back();

    const double span = b - a;
    long full = static_cast<long>(std::floor(span / period));
    double rest = span - full * period;
    if (rest > period - 1e-9 * period) {
      ++full;
      rest = 0.0;
    }

    // Trace samples snap to the nearest grid point inside the period.
    long k_cur = 0;
    CMatrix power = CMatrix::Identity(u.rows(), u.cols());
    while (pending_before(start + b)) {
      const double local = std::max(0.0, times_[next_] - t0);
      long k = std::min(full, static_cast<long>(std::floor(local / period)));
      long j = std::lround((local - k * period) / dt);
      j = std::clamp(j, 0L, m);
      if (k == full) j = std::min(j, static_cast<long>(std::floor(rest / dt)));
      while (k_cur < k) {
        power = one_period * power;
        ++k_cur;
      }
      record(t0 + k * period + j * dt, partial[j] * power * u);
      ++next_;
    }

    CMatrix total = matrix_power(one_period, full);
    if (rest > 0.0) {
      const long steps = std::max(1L, static_cast<long>(std::ceil(rest / dt)));
      const double hr = rest / steps;
      const double ur = a + full * period;
      for (long j = 0; j < steps; ++j) total = step(seg, start, ur + j * hr, hr, true) * total;
    }
    u = nearest_unitary(total) * u;
  }

  const Schedule& schedule_;
  const HamiltonianModel& model_;
  const EvolveOptions& opt_;
  double t_begin_;
  double t_end_;
  double scale_;

  bool tracing_ = false;
  std::vector<double> times_;
  std::size_t next_ = 0;
  CVector psi0_;
  CVector target_;
  std::vector<TraceRow> trace_;
  double used_step_ = 0.0;
  bool varying_ = false;
};

}  // namespace

PropagationResult evolve(const Schedule& schedule, const HamiltonianModel& model,
                         const EvolveOptions& options) {
  const double t_begin = options.t_begin;
  const double t_end = options.t_end < 0.0 ? schedule.duration() : options.t_end;
  if (t_begin < 0.0 || t_end > schedule.duration() * (1.0 + 1e-12) || t_end < t_begin) {
    throw PropagationError("evolve: window outside schedule");
  }
  if (options.substep < 0.0) throw PropagationError("evolve: substep must be positive");
  if (options.substep > 0.0) {
    for (const auto& seg : schedule.segments()) {
      if (seg.duration > 0.0 && options.substep > seg.duration) {
        throw PropagationError("evolve: substep larger than segment '" + seg.tag + "'");
      }
    }
  }
  const Eigen::Index n = model.dim();
  std::optional<CVector> psi0 = options.initial;
  if (psi0) {
    if (psi0->size() != n) throw PropagationError("evolve: initial state has wrong dimension");
    if (std::abs(psi0->norm() - 1.0) > default_numeric_settings().state_norm_tol) {
      throw PropagationError("evolve: initial state is not normalised");
    }
  }
  CVector target = options.target.value_or(psi0.value_or(CVector()));
  if (options.target && target.size() != n) {
    throw PropagationError("evolve: target state has wrong dimension");
  }

  std::vector<double> times;
  if (psi0 && options.trace_rows > 0) {
    const int rows = std::max(2, options.trace_rows);
    for (int k = 0; k < rows; ++k) {
      times.push_back(t_begin + (t_end - t_begin) * k / (rows - 1));
    }
    times.back() = t_end;
  }

  auto make_pass = [&](double scale, bool trace) {
    Pass p(schedule, model, options, t_begin, t_end, scale);
    if (trace && !times.empty()) p.enable_trace(times, *psi0, target);
    return p;
  };

  PropagationResult result;
  Pass first = make_pass(1.0, true);
  CMatrix u = first.run();
  result.substep = first.used_step();
  if (!first.varying() || !options.refine) {
    result.final_unitary = std::move(u);
    result.trace = first.take_trace();
    return result;
  }

  double scale = 1.0;
  bool converged = false;
  for (int r = 0; r < options.max_refinements; ++r) {
    scale *= 0.5;
    Pass finer = make_pass(scale, false);
    CMatrix v = finer.run();
    result.refinement_change = hs_norm(v - u);
    result.refinements = r + 1;
    result.substep = finer.used_step();
    u = std::move(v);
    if (result.refinement_change < options.refine_tol) {
      converged = true;
      break;
    }
  }
  result.converged = converged;
  result.final_unitary = std::move(u);
  if (!times.empty()) {
    Pass traced = make_pass(scale, true);
    traced.run();
    result.trace = traced.take_trace();
  }
  return result;
}

double state_fidelity(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw PropagationError("state_fidelity: dimension mismatch");
  const double tol = 1e-8;
  if (std::abs(a.norm() - 1.0) > tol || std::abs(b.norm() - 1.0) > tol) {
    throw PropagationError("state_fidelity: states must be normalised");
  }
  return std::min(1.0, std::norm(a.dot(b)));
}

GateError gate_error(const CMatrix& realized, const CMatrix& target,
                     std::span<const Eigen::Index> subspace, double leakage_threshold) {
  const Eigen::Index k = static_cast<Eigen::Index>(subspace.size());
  if (target.rows() != k || target.cols() != k) {
    throw PropagationError("gate_error: target size does not match subspace");
  }
  for (auto idx : subspace) {
    if (idx < 0 || idx >= realized.rows()) throw PropagationError("gate_error: bad subspace index");
  }
  CMatrix block(k, k);
  double kept = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < k; ++r) block(r, c) = realized(subspace[r], subspace[c]);
    kept += block.col(c).squaredNorm();
  }
  const double total = [&] {
    double t = 0.0;
    for (auto idx : subspace) t += realized.col(idx).squaredNorm();
    return t;
  }();
  GateError out;
  out.leakage = std::max(0.0, (total - kept) / k);
  out.leakage_ok = out.leakage <= leakage_threshold;
  out.error = std::clamp(1.0 - std::abs((target.adjoint() * block).trace()) / k, 0.0, 1.0);
  return out;
}

std::string format_sig12(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, std::span<const std::string> labels,
                     std::span<const TraceRow> trace) {
  out << 't';
  for (const auto& l : labels) out << ',' << l;
  out << ",fidelity\n";
  for (const auto& row : trace) {
    out << format_sig12(row.t);
    for (double p : row.populations) out << ',' << format_sig12(p);
    out << ',' << format_sig12(row.fidelity) << '\n';
  }
}

}  // namespace holopi::propagate
