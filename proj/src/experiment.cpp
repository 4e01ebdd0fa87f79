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

#include "holopi/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "holopi/adiabatic.hpp"
#include "holopi/lambda_model.hpp"
#include "holopi/rydberg.hpp"
#include "holopi/schedule.hpp"

namespace holopi::experiment {

namespace {

using config::ExperimentConfig;
using config::Mode;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool two_qubit(Mode m) { return m == Mode::TwoQubitEffective || m == Mode::TwoQubitFull; }

double delta_of(const ExperimentConfig& c) { return c.delta_ratio * c.omega; }
double omega_eff_of(const ExperimentConfig& c) { return 2.0 * c.omega * c.omega / delta_of(c); }

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ExperimentError("cannot write " + p.string());
  return out;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const Summary& s) {
  nlohmann::json j;
  j["gate"] = s.gate;
  j["mode"] = s.mode;
  j["fidelity"] = number_or_null(s.fidelity);
  j["gate_error"] = number_or_null(s.gate_error);
  j["leakage"] = number_or_null(s.leakage);
  j["area_mod_2pi"] = number_or_null(s.area_mod_2pi);
  j["gamma_plus"] = number_or_null(s.gamma_plus);
  j["runtime_s"] = s.runtime_s;
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto& [k, v] : s.metrics) metrics[k] = number_or_null(v);
  j["metrics"] = metrics;
  j["warnings"] = s.warnings;
  return j;
}

struct Propagated {
  propagate::PropagationResult result;
  double fidelity = 0.0;
  propagate::GateError error;
};

Propagated simulate(const Schedule& sched, const propagate::HamiltonianModel& model,
                    const ExperimentConfig& cfg, const CVector& psi0, const CVector& target,
                    const CMatrix& gate_target, std::span<const Eigen::Index> subspace) {
  propagate::EvolveOptions o;
  o.substep = cfg.substep;
  o.refine_tol = cfg.refine_tol;
  o.trace_rows = cfg.trace_rows;
  o.initial = psi0;
  o.target = target;
  Propagated p;
  p.result = propagate::evolve(sched, model, o);
  p.fidelity = propagate::state_fidelity(target, p.result.final_unitary * psi0);
  p.error = propagate::gate_error(p.result.final_unitary, gate_target, subspace);
  return p;
}

void fill_propagation(RunResult& out, const Propagated& p) {
  out.summary.fidelity = p.fidelity;
  out.summary.gate_error = p.error.error;
  out.summary.leakage = p.error.leakage;
  out.trace = p.result.trace;
  out.summary.metrics.emplace_back("substep_s", p.result.substep);
  out.summary.metrics.emplace_back("refinement_change", p.result.refinement_change);
  out.summary.metrics.emplace_back("refinements", p.result.refinements);
  if (!p.result.converged) {
    out.summary.warnings.push_back("step refinement did not reach the tolerance");
  }
  if (!p.error.leakage_ok) out.summary.warnings.push_back("leakage above threshold");
}

void run_adiabaticity(const ExperimentConfig& cfg, RunResult& out) {
  out.summary.gate = "slow-ramp";
  out.summary.fidelity = out.summary.gate_error = out.summary.leakage = kNaN;
  out.summary.area_mod_2pi = out.summary.gamma_plus = kNaN;
  out.table.header = {"kind", "x", "max_f_norm", "reference"};
  for (double a : cfg.toy_tau_delta_e) {
    const auto r = adiabatic::phase_integral(a);
    out.table.rows.push_back({0.0, a, r.max_abs, 2.0 / a});
  }
  const auto scaling =
      ramp_scaling(cfg.ramp_omega, cfg.ramp_theta_start, cfg.ramp_theta_end, cfg.ramp_tau);
  for (std::size_t k = 0; k < scaling.tau.size(); ++k) {
    out.table.rows.push_back({1.0, scaling.tau[k], scaling.max_f_norm[k], scaling.dyson_bound[k]});
  }
  out.summary.metrics.emplace_back("ramp_slope", scaling.slope);
  for (std::size_t k = 0; k < cfg.toy_tau_delta_e.size(); ++k) {
    out.summary.metrics.emplace_back("toy_max_" + std::to_string(k), out.table.rows[k][2]);
  }
  if (!cfg.ramp_tau.empty()) {
    out.schedule = schedule::slow_ramp(cfg.ramp_omega, cfg.ramp_theta_start, cfg.ramp_theta_end,
                                       0.0, cfg.ramp_tau.back());
  }
}

}  // namespace

gates::GateSpec resolve_gate(const ExperimentConfig& cfg) {
  gates::GateSpec spec;
  std::string key;
  for (char ch : cfg.gate) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (key == "custom") {
    spec.label = "custom";
    spec.theta0 = cfg.theta0;
    spec.phi0 = cfg.phi0;
    spec.gamma_plus = cfg.gamma_plus;
    const CMatrix u = lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus);
    spec.target = two_qubit(cfg.mode) ? gates::controlled(u) : u;
    return spec;
  }
  try {
    spec = gates::table1(cfg.gate, cfg.cphase_gamma);
  } catch (const gates::GateError& e) {
    throw config::ConfigError(std::string("experiment.gate: ") + e.what());
  }
  if (two_qubit(cfg.mode) && !spec.two_qubit()) {
    throw config::ConfigError("experiment.gate: " + spec.label + " is a single-qubit gate; "
                              "two-qubit modes take CNOT, CPHASE or custom");
  }
  if (!two_qubit(cfg.mode) && spec.two_qubit()) {
    throw config::ConfigError("experiment.gate: " + spec.label + " needs a two-qubit mode");
  }
  return spec;
}

Schedule plan(const ExperimentConfig& cfg, const gates::GateSpec& spec) {
  schedule::PlanOptions o = two_qubit(cfg.mode) ? schedule::two_qubit_plan_options(omega_eff_of(cfg))
                                                : schedule::PlanOptions{};
  if (!two_qubit(cfg.mode)) o.omega = cfg.omega;
  if (!cfg.n_per_step.empty()) std::copy_n(cfg.n_per_step.begin(), 5, o.n_per_step.begin());
  o.ramp_rate = kPi / cfg.ramp_time;
  o.mode = cfg.pulse_mode;
  if (two_qubit(cfg.mode)) {
    if (cfg.quantize_bursts) o.burst_quantum = 2.0 * kPi / delta_of(cfg);
    return schedule::plan_two_qubit(spec.theta0, spec.phi0, spec.gamma_plus, o);
  }
  return schedule::plan_single_qubit(spec.theta0, spec.phi0, spec.gamma_plus, o);
}

CVector initial_state(const ExperimentConfig& cfg, const gates::GateSpec& spec) {
  std::string label = cfg.initial;
  const double r = 1.0 / std::sqrt(2.0);
  if (!two_qubit(cfg.mode)) {
    if (label.empty()) label = (spec.label == "Z" || spec.label == "S") ? "+" : "0";
    CVector v = CVector::Zero(3);
    if (label == "e") v(lambda::kExcited) = 1.0;
    else if (label == "0") v(lambda::kZero) = 1.0;
    else if (label == "1") v(lambda::kOne) = 1.0;
    else if (label == "+") v << 0.0, r, r;
    else if (label == "-") v << 0.0, r, -r;
    else if (label == "+i") v << 0.0, r, Complex(0.0, r);
    else throw config::ConfigError("experiment.initial: unknown single-qubit state '" + label + "'");
    return v;
  }
  if (label.empty()) label = spec.label == "CPHASE" ? "10+11" : "10";
  CVector v4 = CVector::Zero(4);
  if (label == "00") v4(0) = 1.0;
  else if (label == "01") v4(1) = 1.0;
  else if (label == "10") v4(2) = 1.0;
  else if (label == "11") v4(3) = 1.0;
  else if (label == "10+11") v4 << 0.0, 0.0, r, r;
  else throw config::ConfigError("experiment.initial: unknown two-qubit state '" + label + "'");
  if (cfg.mode == Mode::TwoQubitFull) return rydberg::embed_qubits(v4);
  if (std::abs(v4(0)) + std::abs(v4(1)) > 0.0) {
    throw config::ConfigError("experiment.initial: the effective model covers {10, 11} only; "
                              "use two-qubit-full for '" + label + "'");
  }
  CVector v3 = CVector::Zero(3);
  v3(1) = v4(2);
  v3(2) = v4(3);
  return v3;
}

RunResult run(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult out;
  out.summary.mode = std::string(config::to_string(cfg.mode));

  if (cfg.mode == Mode::Adiabaticity) {
    run_adiabaticity(cfg, out);
  } else {
    const gates::GateSpec spec = resolve_gate(cfg);
    out.summary.gate = spec.label;
    out.schedule = plan(cfg, spec);
    const auto audit = schedule::audit(out.schedule);
    if (!audit.ok()) {
      std::string msg = "infeasible schedule:";
      for (const auto& v : audit.violations) msg += "\n  " + v;
      throw ExperimentError(msg);
    }
    out.summary.area_mod_2pi = audit.area_mod_2pi;
    out.summary.gamma_plus = audit.gamma_plus;
    out.summary.metrics.emplace_back("duration_s", audit.duration);
    out.summary.metrics.emplace_back("total_area", audit.total_area);

    const CVector psi0 = initial_state(cfg, spec);
    const CMatrix ideal3 = lambda::loop_unitary_3level(spec.theta0, spec.phi0, spec.gamma_plus);
    const CMatrix block = lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus);
    static constexpr std::array<Eigen::Index, 2> kLogical{1, 2};

    if (cfg.mode == Mode::SingleQubit || cfg.mode == Mode::TwoQubitEffective) {
      const propagate::LambdaModel model = cfg.mode == Mode::SingleQubit
                                               ? propagate::LambdaModel()
                                               : rydberg::effective_model();
      out.labels = model.labels();
      const auto p = simulate(out.schedule, model, cfg, psi0, ideal3 * psi0, block, kLogical);
      fill_propagation(out, p);
      out.summary.metrics.emplace_back(
          "closed_form_distance",
          distance_up_to_phase(p.result.final_unitary, ideal3));
    } else if (cfg.mode == Mode::TwoQubitFull) {
      const double delta = delta_of(cfg);
      const rydberg::FullModel model(delta, cfg.v12_mode, omega_eff_of(cfg));
      out.labels = model.labels();
      const CMatrix ideal4 = gates::controlled(block);
      CMatrix ideal9 = CMatrix::Identity(rydberg::kDim, rydberg::kDim);
      const auto q = rydberg::qubit_indices();
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) ideal9(q[i], q[j]) = ideal4(i, j);
      }
      const auto p = simulate(out.schedule, model, cfg, psi0, ideal9 * psi0, ideal4, q);
      fill_propagation(out, p);
      out.summary.metrics.emplace_back("delta_rad_per_s", delta);
      out.summary.metrics.emplace_back("omega_eff_rad_per_s", omega_eff_of(cfg));
      const auto peak = model.params(ControlPoint{omega_eff_of(cfg), kPi / 2, 0.0});
      for (const auto& w : rydberg::validity_warnings(peak)) out.summary.warnings.push_back(w);
    } else {
      // Toggling: transition operator of the planned program next to the
      // lab-frame propagator.
      const propagate::LambdaModel model;
      out.labels = model.labels();
      const auto p = simulate(out.schedule, model, cfg, psi0, ideal3 * psi0, block, kLogical);
      fill_propagation(out, p);
      const double tau = out.schedule.duration();
      const CMatrix u_t = adiabatic::transition_operator(out.schedule, tau);
      const CMatrix framed = adiabatic::compose_frame(out.schedule, tau, u_t);
      out.summary.metrics.emplace_back(
          "transition_deviation", hs_norm(u_t - CMatrix::Identity(3, 3)));
      out.summary.metrics.emplace_back("frame_identity_error",
                                       hs_norm(p.result.final_unitary - framed));
      const auto report = adiabatic::f_integral(out.schedule);
      out.summary.metrics.emplace_back("max_f_norm", report.max_f_norm);
      out.summary.metrics.emplace_back("dyson_bound", adiabatic::dyson_bound(report));
    }
  }
  out.summary.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string summary_json(const Summary& s) { return to_json(s).dump(2) + "\n"; }

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (!result.schedule.empty()) {
    auto out = open_out(dir / "schedule.txt");
    write_schedule(out, result.schedule);
  }
  if (!result.trace.empty()) {
    auto out = open_out(dir / "trace.csv");
    propagate::write_trace_csv(out, result.labels, result.trace);
  }
  if (!result.table.header.empty()) {
    auto out = open_out(dir / "adiabaticity.csv");
    for (std::size_t k = 0; k < result.table.header.size(); ++k) {
      out << (k ? "," : "") << result.table.header[k];
    }
    out << '\n';
    for (const auto& row : result.table.rows) {
      out << (row[0] == 0.0 ? "toy" : "ramp");
      for (std::size_t k = 1; k < row.size(); ++k) out << ',' << propagate::format_sig12(row[k]);
      out << '\n';
    }
  }
  auto out = open_out(dir / "summary.json");
  out << summary_json(result.summary);
}

std::vector<SweepPoint> sweep(const config::ConfigSource& base, int workers) {
  const auto cfg = config::build(base);
  if (cfg.sweep_axis.empty()) throw config::ConfigError("sweep.axis: no sweep configured");
  const std::size_t n = cfg.sweep_values.size();

  // Validate every grid point before starting any work.
  std::vector<config::ExperimentConfig> points;
  for (const auto& v : cfg.sweep_values) {
    config::ConfigSource src = base;
    src.set(cfg.sweep_axis, v, "sweep value '" + v + "'");
    points.push_back(config::build(src));
  }

  std::vector<SweepPoint> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = SweepPoint{cfg.sweep_values[i], run(points[i])};
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned count = workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
  count = std::clamp(count, 1u, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void write_sweep(std::span<const SweepPoint> points, const std::string& axis,
                 const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto csv = open_out(dir / "sweep.csv");
  csv << axis << ",fidelity,gate_error,leakage,area_mod_2pi,gamma_plus\n";
  nlohmann::json all = nlohmann::json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& s = points[i].result.summary;
    csv << points[i].value;
    for (double v : {s.fidelity, s.gate_error, s.leakage, s.area_mod_2pi, s.gamma_plus}) {
      csv << ',' << (std::isfinite(v) ? propagate::format_sig12(v) : "");
    }
    csv << '\n';
    nlohmann::json j = to_json(s);
    j["value"] = points[i].value;
    all.push_back(std::move(j));

    char name[32];
    std::snprintf(name, sizeof name, "point_%03zu", i);
    write_outputs(points[i].result, dir / name);
  }
  auto js = open_out(dir / "sweep.json");
  js << all.dump(2) << '\n';
}

std::vector<GatecheckRow> gatecheck(std::span<const gates::GateSpec> specs, double tol) {
  std::vector<GatecheckRow> rows;
  for (const auto& s : specs) {
    GatecheckRow r;
    r.label = s.label;
    r.theta0 = s.theta0;
    r.phi0 = s.phi0;
    r.gamma_plus = s.gamma_plus;
    const CMatrix realized = gates::realize(s);
    r.distance = gates::spec_distance(s, realized);
    r.global_phase = std::arg(relative_phase(s.target, realized));
    r.pass = r.distance <= tol;
    rows.push_back(std::move(r));
  }
  return rows;
}

void print_gatecheck(std::ostream& out, std::span<const GatecheckRow> rows) {
  const auto flags = out.flags();
  out << std::left << std::setw(8) << "gate" << std::right << std::setw(12) << "theta0/pi"
      << std::setw(12) << "phi0/pi" << std::setw(12) << "gamma+/pi" << std::setw(14) << "distance"
      << std::setw(14) << "phase/pi" << "  result\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(8) << r.label << std::right << std::fixed << std::setprecision(6)
        << std::setw(12) << r.theta0 / kPi << std::setw(12) << r.phi0 / kPi << std::setw(12)
        << r.gamma_plus / kPi << std::scientific << std::setprecision(2) << std::setw(14)
        << r.distance << std::fixed << std::setprecision(6) << std::setw(14)
        << r.global_phase / kPi << "  " << (r.pass ? "ok" : "FAIL") << '\n';
  }
  out.flags(flags);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope needs two or more points");
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw std::invalid_argument("loglog_slope needs positive data");
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

RampScaling ramp_scaling(double omega, double theta_start, double theta_end,
                         std::span<const double> taus) {
  RampScaling out;
  for (double tau : taus) {
    const auto sched = schedule::slow_ramp(omega, theta_start, theta_end, 0.0, tau);
    const auto report = adiabatic::f_integral(sched);
    out.tau.push_back(tau);
    out.max_f_norm.push_back(report.max_f_norm);
    out.dyson_bound.push_back(adiabatic::dyson_bound(report));
  }
  if (out.tau.size() >= 2) out.slope = loglog_slope(out.tau, out.max_f_norm);
  return out;
}

}  // namespace holopi::experiment
