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

#include "qswitch/linalg.hpp"

#include <cmath>
#include <sstream>

namespace qswitch {

namespace {

Tolerances g_tolerances;

std::string dim_message(const char* what, Eigen::Index a, Eigen::Index b) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << a << " vs " << b << ")";
  return os.str();
}

}  // namespace

const Tolerances& tolerances() { return g_tolerances; }
void set_tolerances(const Tolerances& t) { g_tolerances = t; }

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

void require_square_finite(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ContractViolation(std::string(what) + ": matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw ContractViolation(std::string(what) + ": matrix has non-finite entries");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  require_square_finite(m_, "DensityMatrix");
  const auto& tol = tolerances();
  if (!is_hermitian(m_, tol.hermitian)) {
    throw ContractViolation("DensityMatrix: not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > tol.trace) {
    throw ContractViolation("DensityMatrix: trace differs from 1");
  }
  if (hermitian_eigenvalues(m_).front() < -tol.positivity) {
    throw ContractViolation("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& m) {
  require_square_finite(m, "DensityMatrix::normalized");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const Complex tr = h.trace();
  if (std::abs(tr) == 0.0) {
    throw ContractViolation("DensityMatrix::normalized: zero trace");
  }
  return DensityMatrix(h / tr.real());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw DomainError("maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int index) {
  return DensityMatrix(projector(ket(dim, index)));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw ContractViolation("DensityMatrix::pure: zero vector");
  return DensityMatrix::normalized(projector(v / n));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require_square_finite(m, "hermitian_eigenvalues");
  if (!is_hermitian(m, 1e-10)) {
    throw ContractViolation("hermitian_eigenvalues: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double hermitian_trace_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (double e : hermitian_eigenvalues(m)) sum += std::abs(e);
  return sum;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw ContractViolation(dim_message("trace_distance", a.dim(), b.dim()));
  }
  const ComplexMatrix diff = a.matrix() - b.matrix();
  // Exact Hermitization removes rounding asymmetry from upstream arithmetic.
  return 0.5 * hermitian_trace_norm(0.5 * (diff + diff.adjoint()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace_control(const ComplexMatrix& joint, int system_dim) {
  require_square_finite(joint, "partial_trace_control");
  if (system_dim <= 0 || joint.rows() != 2 * static_cast<Eigen::Index>(system_dim)) {
    throw ContractViolation(dim_message("partial_trace_control", joint.rows(), 2 * system_dim));
  }
  ComplexMatrix out = ComplexMatrix::Zero(system_dim, system_dim);
  for (int i = 0; i < system_dim; ++i) {
    for (int j = 0; j < system_dim; ++j) {
      out(i, j) = joint(2 * i, 2 * j) + joint(2 * i + 1, 2 * j + 1);
    }
  }
  return out;
}

ComplexMatrix choi_matrix(const LinearMap& map, int dim) {
  const int d2 = dim * dim;
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
      unit(i, j) = 1.0;
      const ComplexMatrix image = map(unit);
      out.block(i * dim, j * dim, dim, dim) = image / static_cast<double>(dim);
    }
  }
  return out;
}

ComplexMatrix apply_kraus(const KrausSet& kraus, const ComplexMatrix& x) {
  if (kraus.empty()) throw ContractViolation("apply_kraus: empty Kraus set");
  ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) {
    if (k.cols() != x.rows()) {
      throw ContractViolation(dim_message("apply_kraus", k.cols(), x.rows()));
    }
    out.noalias() += k * x * k.adjoint();
  }
  return out;
}

double trace_preservation_defect(const KrausSet& kraus) {
  if (kraus.empty()) return 1.0;
  const auto n = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus) sum.noalias() += k.adjoint() * k;
  return max_abs(sum - ComplexMatrix::Identity(n, n));
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
std::vector<ComplexMatrix> all() { return {identity(), x(), y(), z()}; }
}  // namespace pauli

ComplexVector ket(int dim, int index) {
  if (index < 0 || index >= dim) throw DomainError("ket: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

ComplexVector plus_ket() {
  ComplexVector v(2);
  v << M_SQRT1_2, M_SQRT1_2;
  return v;
}

ComplexVector minus_ket() {
  ComplexVector v(2);
  v << M_SQRT1_2, -M_SQRT1_2;
  return v;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace qswitch
