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

#include "holopi/qmat.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace holopi {

const NumericSettings& default_numeric_settings() {
  static const NumericSettings settings{};
  return settings;
}

bool is_hermitian(const CMatrix& m, const NumericSettings& settings) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= settings.hermitian_tol * scale;
}

bool is_unitary(const CMatrix& u, const NumericSettings& settings) {
  if (u.rows() != u.cols()) return false;
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  return hs_norm(u.adjoint() * u - id) <= settings.unitary_tol;
}

CMatrix expm_skew(const CMatrix& h, double t, const NumericSettings& settings) {
  if (h.rows() != h.cols()) {
    throw LinalgError("expm_skew: matrix is not square");
  }
  if (!std::isfinite(t)) {
    throw LinalgError("expm_skew: time is not finite");
  }
  if (!is_hermitian(h, settings)) {
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    throw LinalgError("expm_skew: matrix is not Hermitian (max |H - H^dagger| = " +
                      std::to_string(asym) + ")");
  }
  const Eigen::Index n = h.rows();
  if (t == 0.0 || n == 0) return CMatrix::Identity(n, n);

  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  const CMatrix& v = solver.eigenvectors();
  CVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::exp(-kI * solver.eigenvalues()(k) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

double hs_norm(const CMatrix& m) { return m.norm(); }

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw LinalgError("commutator: operands must be square with equal dimensions");
  }
  return a * b - b * a;
}

double distance_up_to_phase(const CMatrix& u, const CMatrix& v, const NumericSettings& settings) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw LinalgError("distance_up_to_phase: dimension mismatch");
  }
  if (!is_unitary(u, settings) || !is_unitary(v, settings)) {
    throw LinalgError("distance_up_to_phase: inputs must be unitary");
  }
  const double overlap = std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

Complex relative_phase(const CMatrix& u, const CMatrix& v) {
  const Complex tr = (u.adjoint() * v).trace();
  if (std::abs(tr) == 0.0) return {1.0, 0.0};
  return tr / std::abs(tr);
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix outer(Eigen::Index dim, Eigen::Index a, Eigen::Index b) {
  CMatrix m = CMatrix::Zero(dim, dim);
  m(a, b) = 1.0;
  return m;
}

CVector basis_vector(Eigen::Index dim, Eigen::Index k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace holopi
