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

#include "holopi/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "holopi/lambda_model.hpp"

namespace holopi::gates {

namespace {

std::string normalise(std::string_view label) {
  std::string out;
  for (char ch : label) {
    if (ch == '_' || ch == '-' || ch == ' ') continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  for (std::string_view prefix : {"SIGMA", "S"}) {
    if (out.size() == prefix.size() + 1 && out.starts_with(prefix) &&
        std::string_view("XYZ").find(out.back()) != std::string_view::npos) {
      return std::string(1, out.back());
    }
  }
  if (out == "CX") return "CNOT";
  if (out == "CZ" || out == "CP") return "CPHASE";
  return out;
}

GateSpec make(std::string label, double theta0, double phi0, double gamma_plus, CMatrix target,
              bool per_block = false) {
  GateSpec g;
  g.label = std::move(label);
  g.theta0 = theta0;
  g.phi0 = phi0;
  g.gamma_plus = gamma_plus;
  g.target = std::move(target);
  g.per_block_phase = per_block;
  g.global_phase = std::arg(relative_phase(g.target, realize(g)));
  return g;
}

}  // namespace

CMatrix hadamard() {
  CMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

CMatrix s_gate() {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = kI;
  return m;
}

CMatrix cnot() { return controlled(pauli_x()); }

CMatrix cphase(double gamma) {
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = std::exp(kI * gamma);
  return m;
}

GateSpec table1(std::string_view label, double cphase_gamma) {
  const std::string key = normalise(label);
  if (key == "X") return make("X", kPi / 2, 0.0, kPi, pauli_x());
  if (key == "Y") return make("Y", kPi / 2, kPi / 2, kPi, pauli_y());
  if (key == "Z") return make("Z", 0.0, 0.0, kPi, pauli_z());
  if (key == "H") return make("H", kPi / 4, 0.0, kPi, hadamard());
  if (key == "S") return make("S", 0.0, 0.0, kPi / 6, s_gate());
  if (key == "CNOT") return make("CNOT", kPi / 2, 0.0, kPi, cnot());
  if (key == "CPHASE") {
    if (!std::isfinite(cphase_gamma)) throw GateError("conditional phase must be finite");
    return make("CPHASE", 0.0, 0.0, cphase_gamma / 3, cphase(cphase_gamma), true);
  }
  throw GateError("unknown gate label '" + std::string(label) + "'");
}

std::vector<GateSpec> table1_all(double cphase_gamma) {
  std::vector<GateSpec> out;
  for (const char* l : {"X", "Y", "Z", "H", "S", "CNOT", "CPHASE"}) {
    out.push_back(table1(l, cphase_gamma));
  }
  return out;
}

GateSpec decompose(const CMatrix& target) {
  if (target.rows() != 2 || target.cols() != 2) throw GateError("decompose expects a 2x2 matrix");
  if (!is_unitary(target)) throw GateError("decompose expects a unitary matrix");

  CMatrix v = target / std::sqrt(target.determinant());
  if (v.trace().real() < 0.0) v = -v;
  // v = cos(chi/2) I - i sin(chi/2) n.sigma
  const double a0 = 0.5 * v.trace().real();
  const Eigen::Vector3d b{(0.5 * kI * (v * pauli_x()).trace()).real(),
                          (0.5 * kI * (v * pauli_y()).trace()).real(),
                          (0.5 * kI * (v * pauli_z()).trace()).real()};
  const double sn = b.norm();

  GateSpec g;
  g.label = "custom";
  g.target = target;
  if (sn > 1e-14) {
    const double chi = 2.0 * std::atan2(sn, a0);
    const Eigen::Vector3d n = b / sn;
    g.gamma_plus = chi / 3.0;
    g.theta0 = std::acos(std::clamp(n.z(), -1.0, 1.0));
    g.phi0 = (std::hypot(n.x(), n.y()) > 1e-14) ? std::atan2(n.y(), n.x()) : 0.0;
  }
  g.global_phase = std::arg(relative_phase(target, realize(g)));
  return g;
}

CMatrix controlled(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw GateError("controlled expects a 2x2 matrix");
  CMatrix m = CMatrix::Zero(4, 4);
  m.block(0, 0, 2, 2) = CMatrix::Identity(2, 2);
  m.block(2, 2, 2, 2) = u;
  return m;
}

CMatrix controlled(const GateSpec& spec) {
  return controlled(lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus));
}

CMatrix realize(const GateSpec& spec) {
  if (spec.target.rows() == 4) return controlled(spec);
  return lambda::holonomy_gate(spec.theta0, spec.phi0, spec.gamma_plus);
}

double blockwise_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != 4 || u.cols() != 4 || v.rows() != 4 || v.cols() != 4) {
    throw GateError("blockwise_distance expects 4x4 matrices");
  }
  const double tol = default_numeric_settings().unitary_tol;
  for (const CMatrix* m : {&u, &v}) {
    if (m->block(0, 2, 2, 2).norm() > tol || m->block(2, 0, 2, 2).norm() > tol) return 1.0;
  }
  return std::max(distance_up_to_phase(u.block(0, 0, 2, 2), v.block(0, 0, 2, 2)),
                  distance_up_to_phase(u.block(2, 2, 2, 2), v.block(2, 2, 2, 2)));
}

double spec_distance(const GateSpec& spec, const CMatrix& realized) {
  if (spec.per_block_phase) return blockwise_distance(spec.target, realized);
  return distance_up_to_phase(spec.target, realized);
}

}  // namespace holopi::gates
