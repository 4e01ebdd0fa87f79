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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

/// Small dense complex linear algebra shared by every holopi module.
///
/// Matrices are Eigen dense complex matrices. All operators (Hamiltonians,
/// propagators, transition operators) are passed around as values.
namespace holopi {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Tolerances used by the validity checks. Hermiticity is checked against the
/// largest entry magnitude so that rad/s-scale Hamiltonians are treated the
/// same way as dimensionless ones.
struct NumericSettings {
  double hermitian_tol = 1e-12;
  double unitary_tol = 1e-10;
  double state_norm_tol = 1e-10;
};

const NumericSettings& default_numeric_settings();

class LinalgError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_hermitian(const CMatrix& m, const NumericSettings& settings = default_numeric_settings());
bool is_unitary(const CMatrix& u, const NumericSettings& settings = default_numeric_settings());

/// exp(-i H t) for Hermitian H, computed from the eigendecomposition of H.
/// Throws LinalgError when H is not square or not Hermitian.
CMatrix expm_skew(const CMatrix& h, double t,
                  const NumericSettings& settings = default_numeric_settings());

/// Hilbert-Schmidt (Frobenius) norm.
double hs_norm(const CMatrix& m);

/// AB - BA. Throws LinalgError on non-square or mismatched inputs.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// 1 - |Tr(U^dagger V)| / dim. Zero iff U and V agree up to a global phase.
double distance_up_to_phase(const CMatrix& u, const CMatrix& v,
                            const NumericSettings& settings = default_numeric_settings());

/// Phase e^{i a} minimising ||V - e^{i a} U||, i.e. arg Tr(U^dagger V).
Complex relative_phase(const CMatrix& u, const CMatrix& v);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// |a><b| in dimension dim.
CMatrix outer(Eigen::Index dim, Eigen::Index a, Eigen::Index b);
CVector basis_vector(Eigen::Index dim, Eigen::Index k);

}  // namespace holopi
