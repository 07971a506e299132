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

#include <array>
#include <functional>
#include <vector>

#include "qswitch/linalg.hpp"

namespace qswitch {

/// A dynamical map Omega_t for every t >= 0.
using MapFamily = std::function<LinearMap(double)>;

/// Orthonormal Hermitian operator basis {G_0 = I/sqrt(d), G_1, ...} with
/// Tr[G_i G_j] = delta_ij. For d = 2 the order is {I, X, Y, Z}/sqrt(2); for
/// larger d the generalized Gell-Mann matrices (symmetric, antisymmetric,
/// diagonal) follow G_0.
class BasisSet {
 public:
  static BasisSet for_dimension(int d);
  static BasisSet pauli() { return for_dimension(2); }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const ComplexMatrix& operator[](int i) const { return elements_[i]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }

  /// r_n = Tr[G_n x]
  ComplexVector coordinates(const ComplexMatrix& x) const;
  /// sum_n r_n G_n
  ComplexMatrix from_coordinates(const ComplexVector& r) const;

 private:
  int dim_ = 0;
  std::vector<ComplexMatrix> elements_;
};

/// F_mn = Tr[G_m Omega_t(G_n)]. Throws LinearityError if an entry has an
/// imaginary part above 1e-10 (the map does not preserve Hermiticity).
RealMatrix f_matrix(const MapFamily& map_at, double t, const BasisSet& basis);

/// Transfer matrix of a single map.
RealMatrix transfer_matrix(const LinearMap& map, const BasisSet& basis);

/// Linear map whose transfer matrix in `basis` is `f`.
LinearMap map_from_transfer(const RealMatrix& f, const BasisSet& basis);

/// Smallest step used for derivatives, relative to the time scale 1/gamma.
inline constexpr double kDefaultRelativeStep = 1e-5;

/// L(t) = dF/dt F^{-1}. dF/dt by Richardson-extrapolated central differences,
/// or forward differences when t < h. Throws InversionError when the
/// condition number of F(t) exceeds 1e10.
RealMatrix l_matrix(const MapFamily& map_at, double t, const BasisSet& basis, double h);

/// Gamma_C(t) = -1/4 d/dt ln C(t), with the same difference scheme as
/// l_matrix. Throws DomainError when C is not positive at a sample point.
double gamma_from_C(const std::function<double(double)>& c_of_t, double t, double h);

/// Gamma_S(t) = 16 gamma (-G)(G^2 - 6G - 3) / ((G^2 - 2G + 9)(5G^2 + 6G - 3)),
/// G = e^{4 gamma t}.
double gamma_S_closed_form(double t, double gamma);

/// Canonical Pauli rates {Gamma_1, Gamma_2, Gamma_3} of a Pauli-diagonal qubit
/// generator, from the traceless diagonal of L:
///   L_xx = -2(G2 + G3), L_yy = -2(G1 + G3), L_zz = -2(G1 + G2).
std::array<double, 3> pauli_rates_from_generator(const RealMatrix& l);

struct DivisibilityCheck {
  bool cp_divisible;
  /// Smallest eigenvalue of the generator's Choi matrix restricted to the
  /// complement of the maximally entangled state. For Pauli generators these
  /// eigenvalues are exactly the canonical rates.
  double min_rate;
  std::vector<double> rates;
};

/// A generator is CP-divisible at t iff Q C(L) Q >= 0 where C(L) is the Choi
/// matrix of the generator and Q projects out |psi>. Rates >= -tol count as
/// non-negative.
DivisibilityCheck cp_divisibility_flag(const RealMatrix& l, const BasisSet& basis,
                                       double tol = 1e-8);

struct LindbladReport {
  double t;
  RealMatrix f;
  RealMatrix l;
  /// Mean of the three canonical rates (exact for the symmetric channel).
  double gamma_s;
  std::array<double, 3> rates;
  bool cp_divisible;
  double min_rate;
  double condition_number;
};

/// Full reconstruction at one time, qubit maps only.
LindbladReport lindblad_report(const MapFamily& map_at, double t, double h);

}  // namespace qswitch
