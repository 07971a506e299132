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

#include "qswitch/lindblad.hpp"

#include <cmath>
#include <sstream>

#include "qswitch/numerics.hpp"

namespace qswitch {

namespace {

double condition_number(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  return smallest == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / smallest;
}

}  // namespace

BasisSet BasisSet::for_dimension(int d) {
  if (d < 2) throw DomainError("BasisSet: dimension must be at least 2");
  BasisSet out;
  out.dim_ = d;
  out.elements_.push_back(ComplexMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(d, d);
      s(j, k) = s(k, j) = M_SQRT1_2;
      out.elements_.push_back(s);
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(j, k) = Complex(0.0, -M_SQRT1_2);
      a(k, j) = Complex(0.0, M_SQRT1_2);
      out.elements_.push_back(a);
    }
  }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int m = 0; m < l; ++m) g(m, m) = norm;
    g(l, l) = -static_cast<double>(l) * norm;
    out.elements_.push_back(g);
  }
  return out;
}

ComplexVector BasisSet::coordinates(const ComplexMatrix& x) const {
  ComplexVector r(size());
  for (int n = 0; n < size(); ++n) r(n) = (elements_[n] * x).trace();
  return r;
}

ComplexMatrix BasisSet::from_coordinates(const ComplexVector& r) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (int n = 0; n < size(); ++n) out += r(n) * elements_[n];
  return out;
}

RealMatrix transfer_matrix(const LinearMap& map, const BasisSet& basis) {
  const int n = basis.size();
  RealMatrix f(n, n);
  for (int col = 0; col < n; ++col) {
    const ComplexMatrix image = map(basis[col]);
    for (int row = 0; row < n; ++row) {
      const Complex entry = (basis[row] * image).trace();
      if (std::abs(entry.imag()) > 1e-10) {
        throw LinearityError("transfer_matrix: map does not preserve Hermiticity");
      }
      f(row, col) = entry.real();
    }
  }
  return f;
}

RealMatrix f_matrix(const MapFamily& map_at, double t, const BasisSet& basis) {
  if (!(t >= 0.0)) throw DomainError("f_matrix: time must be non-negative");
  return transfer_matrix(map_at(t), basis);
}

LinearMap map_from_transfer(const RealMatrix& f, const BasisSet& basis) {
  return [f, basis](const ComplexMatrix& x) {
    const ComplexVector r = basis.coordinates(x);
    return basis.from_coordinates(f.cast<Complex>() * r);
  };
}

RealMatrix l_matrix(const MapFamily& map_at, double t, const BasisSet& basis, double h) {
  if (!(h > 0.0)) throw DomainError("l_matrix: step must be positive");
  const RealMatrix f = f_matrix(map_at, t, basis);
  const double cond = condition_number(f);
  if (!(cond <= 1e10)) {
    std::ostringstream os;
    os << "l_matrix: F(t) is singular at t = " << t << " (condition number " << cond << ")";
    throw InversionError(os.str(), cond);
  }
  const bool forward = t < h;
  const RealMatrix fdot = numerics::richardson_derivative(
      [&](double s) -> RealMatrix { return f_matrix(map_at, s, basis); }, t, h, forward);
  // L = Fdot F^{-1}, solved as F^T L^T = Fdot^T.
  return f.transpose().partialPivLu().solve(fdot.transpose()).transpose();
}

double gamma_from_C(const std::function<double(double)>& c_of_t, double t, double h) {
  if (!(h > 0.0)) throw DomainError("gamma_from_C: step must be positive");
  auto log_c = [&](double s) {
    const double c = c_of_t(s);
    if (!(c > 0.0)) {
      std::ostringstream os;
      os << "gamma_from_C: C(" << s << ") = " << c << " is not positive";
      throw DomainError(os.str());
    }
    return std::log(c);
  };
  return -0.25 * numerics::richardson_derivative(log_c, t, h, t < h);
}

double gamma_S_closed_form(double t, double gamma) {
  if (!(t >= 0.0)) throw DomainError("gamma_S_closed_form: time must be non-negative");
  if (!(gamma > 0.0)) throw DomainError("gamma_S_closed_form: gamma must be positive");
  // Numerator and denominator divided by G^4.
  const double u = std::exp(-4.0 * gamma * t);
  const double num = -u * (1.0 - 6.0 * u - 3.0 * u * u);
  const double den = (1.0 - 2.0 * u + 9.0 * u * u) * (5.0 + 6.0 * u - 3.0 * u * u);
  return 16.0 * gamma * num / den;
}

std::array<double, 3> pauli_rates_from_generator(const RealMatrix& l) {
  if (l.rows() != 4 || l.cols() != 4) {
    throw ContractViolation("pauli_rates_from_generator: qubit generator (4 x 4) required");
  }
  const double a = -0.5 * l(1, 1);  // G2 + G3
  const double b = -0.5 * l(2, 2);  // G1 + G3
  const double c = -0.5 * l(3, 3);  // G1 + G2
  return {0.5 * (b + c - a), 0.5 * (a + c - b), 0.5 * (a + b - c)};
}

DivisibilityCheck cp_divisibility_flag(const RealMatrix& l, const BasisSet& basis, double tol) {
  const int d = basis.dim();
  const int d2 = d * d;
  const ComplexMatrix choi = choi_matrix(map_from_transfer(l, basis), d);

  ComplexVector psi = ComplexVector::Zero(d2);
  for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  const ComplexMatrix q = ComplexMatrix::Identity(d2, d2) - projector(psi);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> q_eig(q);
  // Eigenvalues ascending: the first belongs to |psi>, the rest span its complement.
  const ComplexMatrix v = q_eig.eigenvectors().rightCols(d2 - 1);
  ComplexMatrix restricted = v.adjoint() * choi * v;
  restricted = 0.5 * (restricted + restricted.adjoint());

  DivisibilityCheck out{true, 0.0, hermitian_eigenvalues(restricted)};
  out.min_rate = out.rates.front();
  out.cp_divisible = out.min_rate >= -tol;
  return out;
}

LindbladReport lindblad_report(const MapFamily& map_at, double t, double h) {
  const BasisSet basis = BasisSet::pauli();
  LindbladReport report;
  report.t = t;
  report.f = f_matrix(map_at, t, basis);
  report.condition_number = condition_number(report.f);
  report.l = l_matrix(map_at, t, basis, h);
  report.rates = pauli_rates_from_generator(report.l);
  report.gamma_s = (report.rates[0] + report.rates[1] + report.rates[2]) / 3.0;
  const auto check = cp_divisibility_flag(report.l, basis);
  report.cp_divisible = check.cp_divisible;
  report.min_rate = check.min_rate;
  return report;
}

}  // namespace qswitch
