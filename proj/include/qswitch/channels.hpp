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

#include <functional>

#include "qswitch/linalg.hpp"

namespace qswitch {

/// Constant Lindblad coefficients of the qubit Pauli master equation
///   d rho / dt = sum_i gamma_i (sigma_i rho sigma_i - rho).
struct PauliRates {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;

  static PauliRates uniform(double gamma) { return {gamma, gamma, gamma}; }
  /// Throws DomainError on negative or non-finite rates.
  void validate() const;
};

/// Time-dependent coefficients. The xi integrals are evaluated by quadrature.
struct RateSchedule {
  std::function<double(double)> gamma1;
  std::function<double(double)> gamma2;
  std::function<double(double)> gamma3;

  static RateSchedule constant(const PauliRates& r);
};

/// Time-parametrized CPTP map given by its Kraus operators at each t >= 0.
struct KrausFamily {
  int dim = 2;
  std::function<KrausSet(double)> kraus_at;
};

/// Populations and coherence factors of the depolarizing family:
/// A1 = (1 + e^{-2 xi1}) / 2, A2 = (1 - e^{-2 xi1}) / 2, A3 = e^{-2 xi2},
/// xi1 = int (gamma1 + gamma2), xi2 = int (gamma2 + gamma3).
struct DepolarizingCoefficients {
  double a1;
  double a2;
  double a3;
};

DepolarizingCoefficients depolarizing_coefficients(double t, const PauliRates& rates);
DepolarizingCoefficients depolarizing_coefficients(double t, const RateSchedule& rates);

/// Kraus operators K1..K4 of the depolarizing family (theta = 0):
///   K1 = sqrt(A2) |0><1|, K2 = sqrt(A2) |1><0|,
///   K3 = sqrt((A1 + A3)/2) diag(1, 1), K4 = sqrt((A1 - A3)/2) diag(-1, 1).
/// Throws DomainError for t < 0, and when A1 < A3 (the parametrization is then
/// not completely positive, which happens for some unequal rate triples).
KrausSet depolarizing_kraus(double t, const PauliRates& rates);
KrausSet depolarizing_kraus(double t, const RateSchedule& rates);

KrausFamily depolarizing_family(const PauliRates& rates);

/// Populations mix with e^{-2 xi1}, coherences scale with e^{-2 xi2}.
DensityMatrix pauli_map_closed_form(const DensityMatrix& rho0, double t, const PauliRates& rates);

/// Exact propagator of the Pauli master equation for arbitrary non-negative
/// constant rates, as {sqrt(p_i) sigma_i}. The Bloch components decay with
/// e^{-2(g2+g3)t}, e^{-2(g1+g3)t}, e^{-2(g1+g2)t}. Coincides with
/// depolarizing_kraus in action when gamma1 == gamma2.
KrausSet pauli_channel_kraus(double t, const PauliRates& rates);
KrausFamily pauli_channel_family(const PauliRates& rates);

/// sum_i K_i rho K_i^dagger. Throws ContractViolation when the Kraus set is
/// not trace preserving within 1e-10 or dimensions disagree.
DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho);

/// W_kl = sum_m omega^{mk} |m><m+l|, omega = e^{2 pi i / d}. Composition:
/// W_kl W_rs = omega^{lr} W_{k+r,l+s}; adjoint: W_kl^dagger = omega^{kl} W_{-k,-l}.
ComplexMatrix weyl_operator(int d, int k, int l);

/// omega^{n} for the d-th root of unity, with n reduced modulo d.
Complex root_of_unity_power(int d, long n);

/// Generalized Pauli (Weyl-covariant) channel probabilities p_kl.
class GeneralizedPauliSpec {
 public:
  /// `probabilities` is d x d, non-negative, summing to 1 within 1e-12.
  explicit GeneralizedPauliSpec(RealMatrix probabilities);

  static GeneralizedPauliSpec identity(int d);
  static GeneralizedPauliSpec uniform(int d);

  int dim() const { return static_cast<int>(p_.rows()); }
  double p(int k, int l) const { return p_(k, l); }
  const RealMatrix& probabilities() const { return p_; }

 private:
  RealMatrix p_;
};

/// {sqrt(p_kl) W_kl}; zero-probability terms are omitted.
KrausSet generalized_pauli_kraus(const GeneralizedPauliSpec& spec);

/// p (Phi1 o Phi2)(rho) + (1 - p) (Phi2 o Phi1)(rho).
DensityMatrix classical_mixture_map(const KrausSet& kraus1, const KrausSet& kraus2, double p,
                                    const DensityMatrix& rho);

/// Linear-map form of classical_mixture_map, usable on arbitrary operators.
LinearMap classical_mixture_linear_map(KrausSet kraus1, KrausSet kraus2, double p);

}  // namespace qswitch
