// Copyright 2026 The qswitch Authors
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
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qswitch/errors.hpp"

namespace qswitch {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Kraus operators of a single channel use.
using KrausSet = std::vector<ComplexMatrix>;

/// A linear map on d x d operators. Maps in this library are linear on the
/// whole operator space, not only on states, so that Choi and transfer
/// matrices can be formed from their action on matrix units.
using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

struct Tolerances {
  double hermitian = 1e-12;   // entrywise |A - A^dagger|
  double trace = 1e-12;       // |Tr rho - 1|
  double positivity = 1e-10;  // smallest admissible eigenvalue is -positivity
};

/// Process-wide tolerances. Set once at startup, before any concurrent use.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& t);

/// Largest entry magnitude.
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);

/// Throws ContractViolation unless `m` is square with finite entries.
void require_square_finite(const ComplexMatrix& m, const char* what);

/// Unit-trace, Hermitian, positive semidefinite d x d matrix. The invariants
/// are checked at construction against `tolerances()`.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Hermitizes and renormalizes `m` before validating it. Use only for
  /// matrices that are states up to rounding.
  static DensityMatrix normalized(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(int dim);
  /// |index><index| in the computational basis.
  static DensityMatrix basis_state(int dim, int index);
  static DensityMatrix pure(const ComplexVector& ket);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

/// Real spectrum of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double hermitian_trace_norm(const ComplexMatrix& m);

/// D(a, b) = 1/2 ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// (a (x) b)[i*db + k, j*db + l] = a[i, j] * b[k, l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the control qubit, which is always the second tensor factor.
ComplexMatrix partial_trace_control(const ComplexMatrix& joint, int system_dim);

/// Choi state (id (x) map)(|psi><psi|) with |psi> = d^{-1/2} sum_i |ii>.
ComplexMatrix choi_matrix(const LinearMap& map, int dim);

/// sum_i K_i x K_i^dagger, without any validation.
ComplexMatrix apply_kraus(const KrausSet& kraus, const ComplexMatrix& x);

/// Max-entry deviation of sum_i K_i^dagger K_i from the identity.
double trace_preservation_defect(const KrausSet& kraus);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// {I, X, Y, Z}
std::vector<ComplexMatrix> all();
}  // namespace pauli

ComplexVector ket(int dim, int index);
ComplexVector plus_ket();
ComplexVector minus_ket();
ComplexMatrix projector(const ComplexVector& v);

}  // namespace qswitch
