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

#include "holopi/rydberg.hpp"

#include <cmath>

#include "holopi/control.hpp"

namespace holopi::rydberg {

namespace {

void add(CMatrix& m, Eigen::Index to, Eigen::Index from, Complex value) { m(to, from) += value; }

double drive_power(const RydbergParams& p) {
  return std::norm(p.omega11) + std::norm(p.omega20) + std::norm(p.omega21);
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw RydbergError("delta must be positive");
}

}  // namespace

const std::array<std::string, kDim>& basis_labels() {
  static const std::array<std::string, kDim> labels{"00", "01", "0r", "10", "11",
                                                    "1r", "r0", "r1", "rr"};
  return labels;
}

std::vector<OscillatingTerm> oscillating_terms(const RydbergParams& p) {
  require_delta(p.delta);
  // Single excitations from the ground manifold.
  CMatrix a = CMatrix::Zero(kDim, kDim);
  add(a, kr0, k10, p.omega11);
  add(a, kr1, k11, p.omega11);
  add(a, k0r, k00, p.omega20);
  add(a, k1r, k10, p.omega20);
  add(a, k0r, k01, p.omega21);
  add(a, k1r, k11, p.omega21);
  // De-excitation out of |rr>.
  CMatrix b = CMatrix::Zero(kDim, kDim);
  add(b, k1r, krr, std::conj(p.omega11));
  add(b, kr0, krr, std::conj(p.omega20));
  add(b, kr1, krr, std::conj(p.omega21));

  CMatrix h1 = a + a.adjoint() + b;
  return {{std::move(h1), p.delta}, {std::move(b), 3.0 * p.delta}};
}

CMatrix full_hamiltonian(const RydbergParams& p, double t) {
  CMatrix h = CMatrix::Zero(kDim, kDim);
  for (const auto& term : oscillating_terms(p)) {
    const CMatrix x = term.h * std::exp(-kI * term.omega * t);
    h += x + x.adjoint();
  }
  h(krr, krr) += p.v12 - 2.0 * p.delta;
  return h;
}

double v12_condition(const RydbergParams& p) {
  require_delta(p.delta);
  return 2.0 * p.delta - 4.0 * drive_power(p) / (3.0 * p.delta);
}

std::vector<std::string> validity_warnings(const RydbergParams& p) {
  std::vector<std::string> out;
  const double limit = std::abs(p.delta) / 10.0;
  const std::array<std::pair<const char*, Complex>, 3> drives{
      {{"omega11", p.omega11}, {"omega20", p.omega20}, {"omega21", p.omega21}}};
  for (const auto& [name, value] : drives) {
    if (std::abs(value) > limit) {
      out.push_back(std::string("|") + name + "| = " + format_double(std::abs(value)) +
                    " rad/s exceeds delta/10 = " + format_double(limit) + " rad/s");
    }
  }
  return out;
}

EffectiveHamiltonian::EffectiveHamiltonian(std::vector<OscillatingTerm> terms)
    : terms_(std::move(terms)) {}

CMatrix EffectiveHamiltonian::at(double t) const {
  const Eigen::Index n = terms_.empty() ? 0 : terms_.front().h.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& m : terms_) {
    for (const auto& k : terms_) {
      const double weight = 0.5 * (1.0 / m.omega + 1.0 / k.omega);
      out += weight * commutator(m.h.adjoint(), k.h) * std::exp(kI * (m.omega - k.omega) * t);
    }
  }
  return out;
}

CMatrix EffectiveHamiltonian::secular() const {
  const Eigen::Index n = terms_.empty() ? 0 : terms_.front().h.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (const auto& m : terms_) out += commutator(m.h.adjoint(), m.h) / m.omega;
  return out;
}

EffectiveHamiltonian james_effective(std::vector<OscillatingTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!(terms[i].omega > 0.0)) throw RydbergError("oscillating term frequency must be positive");
    if (terms[i].h.rows() != terms.front().h.rows() || terms[i].h.cols() != terms[i].h.rows()) {
      throw RydbergError("oscillating terms must be square and of equal size");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (terms[i].omega == terms[j].omega) {
        throw RydbergError("oscillating terms must have distinct frequencies");
      }
    }
  }
  return EffectiveHamiltonian(std::move(terms));
}

CMatrix closed_form_effective(const RydbergParams& p) {
  require_delta(p.delta);
  CMatrix h = CMatrix::Zero(kDim, kDim);
  h(krr, k10) = 2.0 * p.omega11 * p.omega20 / p.delta;
  h(krr, k11) = 2.0 * p.omega11 * p.omega21 / p.delta;
  h(k10, krr) = std::conj(h(krr, k10));
  h(k11, krr) = std::conj(h(krr, k11));
  h(krr, krr) = p.v12 - 2.0 * p.delta + 4.0 * drive_power(p) / (3.0 * p.delta);
  return h;
}

std::span<const Eigen::Index> comparison_states() {
  static constexpr std::array<Eigen::Index, 5> states{k00, k01, k10, k11, krr};
  return states;
}

CMatrix effective_lambda(const RydbergParams& p) {
  require_delta(p.delta);
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 1) = 2.0 * p.omega11 * p.omega20 / p.delta;
  h(0, 2) = 2.0 * p.omega11 * p.omega21 / p.delta;
  h(1, 0) = std::conj(h(0, 1));
  h(2, 0) = std::conj(h(0, 2));
  return h;
}

Drives map_controls(double omega_eff, double theta, double phi, double delta) {
  require_delta(delta);
  if (!(omega_eff >= 0.0)) throw RydbergError("effective amplitude must be non-negative");
  const double o11 = std::sqrt(omega_eff * delta / 2.0);
  return {Complex(o11, 0.0), o11 * std::sin(theta / 2) * std::exp(kI * phi),
          Complex(-o11 * std::cos(theta / 2), 0.0)};
}

std::array<Eigen::Index, 3> lambda_embedding() { return {krr, k10, k11}; }

std::array<Eigen::Index, 4> qubit_indices() { return {k00, k01, k10, k11}; }

FullModel::FullModel(double delta, V12Mode mode, double peak_omega_eff)
    : delta_(delta), mode_(mode) {
  require_delta(delta);
  if (mode == V12Mode::Fixed && !(peak_omega_eff > 0.0)) {
    throw RydbergError("fixed V12 mode needs a positive peak amplitude");
  }
  RydbergParams peak;
  peak.delta = delta;
  const Drives d = map_controls(peak_omega_eff, 0.0, 0.0, delta);
  peak.omega11 = d.omega11;
  peak.omega20 = d.omega20;
  peak.omega21 = d.omega21;
  fixed_v12_ = v12_condition(peak);
}

RydbergParams FullModel::params(const ControlPoint& c) const {
  RydbergParams p;
  p.delta = delta_;
  const Drives d = map_controls(c.omega, c.theta, c.phi, delta_);
  p.omega11 = d.omega11;
  p.omega20 = d.omega20;
  p.omega21 = d.omega21;
  p.v12 = mode_ == V12Mode::Fixed ? fixed_v12_ : v12_condition(p);
  return p;
}

CMatrix FullModel::hamiltonian(const ControlPoint& c, double t) const {
  return full_hamiltonian(params(c), t);
}

std::optional<double> FullModel::period() const { return 2.0 * kPi / delta_; }

std::vector<std::string> FullModel::labels() const {
  return {basis_labels().begin(), basis_labels().end()};
}

propagate::LambdaModel effective_model() { return propagate::LambdaModel({"rr", "10", "11"}); }

CVector embed_lambda_state(const CVector& v3) {
  if (v3.size() != 3) throw RydbergError("expected a 3-vector on {rr, 10, 11}");
  CVector out = CVector::Zero(kDim);
  const auto idx = lambda_embedding();
  for (int k = 0; k < 3; ++k) out(idx[k]) = v3(k);
  return out;
}

CVector embed_qubits(const CVector& v4) {
  if (v4.size() != 4) throw RydbergError("expected a 4-vector on {00, 01, 10, 11}");
  CVector out = CVector::Zero(kDim);
  const auto idx = qubit_indices();
  for (int k = 0; k < 4; ++k) out(idx[k]) = v4(k);
  return out;
}

}  // namespace holopi::rydberg
