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

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holopi/adiabatic.hpp"
#include "holopi/experiment.hpp"
#include "holopi/gates.hpp"
#include "holopi/lambda_model.hpp"
#include "holopi/propagate.hpp"
#include "holopi/rydberg.hpp"
#include "holopi/schedule.hpp"

namespace py = pybind11;
using namespace holopi;

namespace {

py::dict evolve_result(const propagate::PropagationResult& r) {
  py::dict d;
  d["final_unitary"] = r.final_unitary;
  d["substep"] = r.substep;
  d["refinement_change"] = r.refinement_change;
  d["refinements"] = r.refinements;
  d["converged"] = r.converged;
  py::list rows;
  for (const auto& row : r.trace) rows.append(py::make_tuple(row.t, row.populations, row.fidelity));
  d["trace"] = rows;
  return d;
}

propagate::EvolveOptions evolve_options(std::optional<CVector> initial, double substep,
                                        double refine_tol, int trace_rows) {
  propagate::EvolveOptions o;
  o.initial = std::move(initial);
  o.substep = substep;
  o.refine_tol = refine_tol;
  o.trace_rows = o.initial ? trace_rows : 0;
  return o;
}

rydberg::RydbergParams make_params(Complex o11, Complex o20, Complex o21, double delta, double v12) {
  rydberg::RydbergParams p;
  p.omega11 = o11;
  p.omega20 = o20;
  p.omega21 = o21;
  p.delta = delta;
  p.v12 = v12;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Holonomic gate planning and exact time-domain simulation";
  m.attr("__version__") = "0.1.0";

  py::register_exception<LinalgError>(m, "LinalgError", PyExc_ValueError);
  py::register_exception<ScheduleError>(m, "ScheduleError", PyExc_ValueError);
  py::register_exception<schedule::PlanError>(m, "PlanError", PyExc_ValueError);
  py::register_exception<gates::GateError>(m, "GateError", PyExc_ValueError);
  py::register_exception<propagate::PropagationError>(m, "PropagationError", PyExc_ValueError);
  py::register_exception<rydberg::RydbergError>(m, "RydbergError", PyExc_ValueError);

  // Linear algebra.
  m.def("expm_skew", [](const CMatrix& h, double t) { return expm_skew(h, t); }, py::arg("h"),
        py::arg("t"), "exp(-i H t) for Hermitian H");
  m.def("hs_norm", &hs_norm);
  m.def("commutator", &commutator);
  m.def("distance_up_to_phase",
        [](const CMatrix& u, const CMatrix& v) { return distance_up_to_phase(u, v); });
  m.def("pauli_x", &pauli_x);
  m.def("pauli_y", &pauli_y);
  m.def("pauli_z", &pauli_z);

  // Control programs.
  py::class_<ControlPoint>(m, "ControlPoint")
      .def(py::init([](double o, double t, double p) { return ControlPoint{o, t, p}; }),
           py::arg("omega") = 0.0, py::arg("theta") = 0.0, py::arg("phi") = 0.0)
      .def_readwrite("omega", &ControlPoint::omega)
      .def_readwrite("theta", &ControlPoint::theta)
      .def_readwrite("phi", &ControlPoint::phi);

  py::class_<Segment>(m, "Segment")
      .def(py::init([](double d, double o, double ts, double te, double ps, double pe, std::string tag) {
             return Segment{d, o, ts, te, ps, pe, std::move(tag)};
           }),
           py::arg("duration"), py::arg("omega"), py::arg("theta_start"), py::arg("theta_end"),
           py::arg("phi_start"), py::arg("phi_end"), py::arg("tag") = "")
      .def_readonly("duration", &Segment::duration)
      .def_readonly("omega", &Segment::omega)
      .def_readonly("theta_start", &Segment::theta_start)
      .def_readonly("theta_end", &Segment::theta_end)
      .def_readonly("phi_start", &Segment::phi_start)
      .def_readonly("phi_end", &Segment::phi_end)
      .def_readonly("tag", &Segment::tag);

  py::class_<Schedule>(m, "Schedule")
      .def(py::init<std::vector<Segment>>())
      .def_property_readonly("segments", &Schedule::segments)
      .def_property_readonly("duration", &Schedule::duration)
      .def("__len__", &Schedule::size)
      .def("at", &Schedule::at)
      .def("to_text",
           [](const Schedule& s) {
             std::ostringstream out;
             write_schedule(out, s);
             return out.str();
           })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_schedule(in);
      });

  m.def(
      "plan_single_qubit",
      [](double theta0, double phi0, double gamma_plus, std::array<int, 5> n, double omega,
         double ramp_rate, bool continuous) {
        schedule::PlanOptions o;
        o.n_per_step = n;
        o.omega = omega;
        o.ramp_rate = ramp_rate;
        o.mode = continuous ? schedule::PulseMode::Continuous : schedule::PulseMode::Burst;
        return schedule::plan_single_qubit(theta0, phi0, gamma_plus, o);
      },
      py::arg("theta0"), py::arg("phi0"), py::arg("gamma_plus"),
      py::arg("n_per_step") = std::array<int, 5>{5, 5, 5, 5, 5},
      py::arg("omega") = schedule::PlanOptions{}.omega,
      py::arg("ramp_rate") = schedule::PlanOptions{}.ramp_rate, py::arg("continuous") = false);

  m.def(
      "plan_two_qubit",
      [](double theta0, double phi0, double gamma_plus, double omega_eff, double burst_quantum) {
        auto o = schedule::two_qubit_plan_options(omega_eff);
        o.burst_quantum = burst_quantum;
        return schedule::plan_two_qubit(theta0, phi0, gamma_plus, o);
      },
      py::arg("theta0"), py::arg("phi0"), py::arg("gamma_plus"), py::arg("omega_eff"),
      py::arg("burst_quantum") = 0.0);

  m.def("audit", [](const Schedule& s) {
    const auto r = schedule::audit(s);
    py::dict d;
    d["ok"] = r.ok();
    d["violations"] = r.violations;
    d["total_area"] = r.total_area;
    d["area_mod_2pi"] = r.area_mod_2pi;
    d["gamma_plus"] = r.gamma_plus;
    d["duration"] = r.duration;
    return d;
  });

  // Lambda model.
  m.def("lambda_hamiltonian", [](double omega, double theta, double phi) {
    return lambda::hamiltonian(ControlPoint{omega, theta, phi});
  });
  m.def("eigenframe", [](double omega, double theta, double phi) {
    const auto f = lambda::eigenframe(ControlPoint{omega, theta, phi});
    return py::make_tuple(std::vector<double>(f.energies.begin(), f.energies.end()), f.matrix());
  }, "Energies (+, -, dark) and the eigenvectors as columns");
  m.def("accumulate_phases", [](const Schedule& s, double t) {
    const auto r = lambda::accumulate_phases(s, t);
    return py::make_tuple(std::vector<double>(r.alpha.begin(), r.alpha.end()),
                          std::vector<double>(r.gamma.begin(), r.gamma.end()));
  });
  m.def("holonomy_gate", &lambda::holonomy_gate, py::arg("theta0"), py::arg("phi0"),
        py::arg("gamma_plus"));
  m.def("loop_unitary_3level", &lambda::loop_unitary_3level, py::arg("theta0"), py::arg("phi0"),
        py::arg("gamma_plus"));

  // Gates.
  py::class_<gates::GateSpec>(m, "GateSpec")
      .def_readonly("theta0", &gates::GateSpec::theta0)
      .def_readonly("phi0", &gates::GateSpec::phi0)
      .def_readonly("gamma_plus", &gates::GateSpec::gamma_plus)
      .def_readonly("target", &gates::GateSpec::target)
      .def_readonly("label", &gates::GateSpec::label)
      .def_readonly("global_phase", &gates::GateSpec::global_phase)
      .def("__repr__", [](const gates::GateSpec& g) {
        std::ostringstream out;
        out << "GateSpec(" << g.label << ", theta0=" << g.theta0 << ", phi0=" << g.phi0
            << ", gamma_plus=" << g.gamma_plus << ")";
        return out.str();
      });
  m.def("table1", &gates::table1, py::arg("label"), py::arg("cphase_gamma") = kPi);
  m.def("decompose", &gates::decompose);
  m.def("controlled", py::overload_cast<const gates::GateSpec&>(&gates::controlled));
  m.def("realize", &gates::realize);
  m.def("cnot", &gates::cnot);
  m.def("cphase", &gates::cphase);
  m.def("gatecheck", [] {
    py::list out;
    for (const auto& r : experiment::gatecheck(gates::table1_all())) {
      py::dict d;
      d["label"] = r.label;
      d["distance"] = r.distance;
      d["global_phase"] = r.global_phase;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  });

  // Propagation.
  m.def(
      "evolve_lambda",
      [](const Schedule& s, std::optional<CVector> initial, double substep, double refine_tol,
         int trace_rows) {
        return evolve_result(propagate::evolve(
            s, propagate::LambdaModel(), evolve_options(std::move(initial), substep, refine_tol, trace_rows)));
      },
      py::arg("schedule"), py::arg("initial") = py::none(), py::arg("substep") = 0.0,
      py::arg("refine_tol") = 1e-7, py::arg("trace_rows") = 512);
  m.def(
      "evolve_rydberg",
      [](const Schedule& s, double delta, std::optional<CVector> initial, bool fixed_v12,
         double peak_omega_eff, double refine_tol, int trace_rows) {
        const rydberg::FullModel model(
            delta, fixed_v12 ? rydberg::V12Mode::Fixed : rydberg::V12Mode::Tracking, peak_omega_eff);
        return evolve_result(propagate::evolve(
            s, model, evolve_options(std::move(initial), 0.0, refine_tol, trace_rows)));
      },
      py::arg("schedule"), py::arg("delta"), py::arg("initial") = py::none(),
      py::arg("fixed_v12") = false, py::arg("peak_omega_eff") = 0.0, py::arg("refine_tol") = 1e-7,
      py::arg("trace_rows") = 64);
  m.def("state_fidelity", &propagate::state_fidelity);

  // Adiabaticity.
  m.def("adiabatic_operator", &adiabatic::adiabatic_operator);
  m.def("transition_hamiltonian", &adiabatic::transition_hamiltonian);
  m.def("phase_integral", [](double a) { return adiabatic::phase_integral(a).max_abs; },
        "max_s |integral_0^s exp(i a s') ds'|");
  m.def(
      "ramp_transition_operator",
      [](double theta_start, double theta_end, double phi_start, double phi_end, int n,
         bool bright_bright) {
        const adiabatic::GeodesicRamp ramp{theta_start, theta_end, phi_start, phi_end};
        const auto flips = adiabatic::midpoint_flips(n, bright_bright);
        return adiabatic::transition_operator(ramp, flips);
      },
      py::arg("theta_start"), py::arg("theta_end"), py::arg("phi_start"), py::arg("phi_end"),
      py::arg("n"), py::arg("bright_bright") = false);
  m.def("max_f_norm", [](const Schedule& s) { return adiabatic::f_integral(s).max_f_norm; });

  // Two atoms.
  m.def("rydberg_hamiltonian",
        [](Complex o11, Complex o20, Complex o21, double delta, double v12, double t) {
          return rydberg::full_hamiltonian(make_params(o11, o20, o21, delta, v12), t);
        },
        py::arg("omega11"), py::arg("omega20"), py::arg("omega21"), py::arg("delta"),
        py::arg("v12"), py::arg("t"));
  m.def("v12_condition", [](Complex o11, Complex o20, Complex o21, double delta) {
    return rydberg::v12_condition(make_params(o11, o20, o21, delta, 0.0));
  });
  m.def("james_secular", [](Complex o11, Complex o20, Complex o21, double delta, double v12) {
    const auto p = make_params(o11, o20, o21, delta, v12);
    CMatrix h = rydberg::james_effective(rydberg::oscillating_terms(p)).secular();
    h(rydberg::krr, rydberg::krr) += v12 - 2.0 * delta;
    return h;
  });
  m.def("closed_form_effective", [](Complex o11, Complex o20, Complex o21, double delta, double v12) {
    return rydberg::closed_form_effective(make_params(o11, o20, o21, delta, v12));
  });
  m.def("map_controls", [](double omega_eff, double theta, double phi, double delta) {
    const auto d = rydberg::map_controls(omega_eff, theta, phi, delta);
    return py::make_tuple(d.omega11, d.omega20, d.omega21);
  });
  m.attr("RYDBERG_BASIS") = std::vector<std::string>(rydberg::basis_labels().begin(),
                                                     rydberg::basis_labels().end());
}
