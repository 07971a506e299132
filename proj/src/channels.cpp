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

#include "qswitch/channels.hpp"

#include <cmath>
#include <sstream>

#include "qswitch/numerics.hpp"

namespace qswitch {

namespace {

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(what) + ": time must be finite and non-negative");
  }
}

DepolarizingCoefficients coefficients_from_xi(double xi1, double xi2) {
  const double e1 = std::exp(-2.0 * xi1);
  return {0.5 * (1.0 + e1), 0.5 * (1.0 - e1), std::exp(-2.0 * xi2)};
}

KrausSet kraus_from_coefficients(const DepolarizingCoefficients& c) {
  const double spread = c.a1 - c.a3;
  if (spread < -1e-14) {
    std::ostringstream os;
    os << "depolarizing_kraus: A1 = " << c.a1 << " < A3 = " << c.a3
       << ", parametrization is not completely positive for these rates";
    throw DomainError(os.str());
  }
  const double s2 = std::sqrt(c.a2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = s2;
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  k2(1, 0) = s2;
  ComplexMatrix k3 = std::sqrt(0.5 * (c.a1 + c.a3)) * ComplexMatrix::Identity(2, 2);
  ComplexMatrix k4 = ComplexMatrix::Zero(2, 2);
  const double s4 = std::sqrt(0.5 * std::max(spread, 0.0));
  k4(0, 0) = -s4;
  k4(1, 1) = s4;
  return {k1, k2, k3, k4};
}

}  // namespace

void PauliRates::validate() const {
  for (double g : {gamma1, gamma2, gamma3}) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw DomainError("PauliRates: rates must be finite and non-negative");
    }
  }
}

RateSchedule RateSchedule::constant(const PauliRates& r) {
  return {[g = r.gamma1](double) { return g; }, [g = r.gamma2](double) { return g; },
          [g = r.gamma3](double) { return g; }};
}

DepolarizingCoefficients depolarizing_coefficients(double t, const PauliRates& rates) {
  require_time(t, "depolarizing_coefficients");
  rates.validate();
  return coefficients_from_xi((rates.gamma1 + rates.gamma2) * t, (rates.gamma2 + rates.gamma3) * t);
}

DepolarizingCoefficients depolarizing_coefficients(double t, const RateSchedule& rates) {
  require_time(t, "depolarizing_coefficients");
  if (t == 0.0) return coefficients_from_xi(0.0, 0.0);
  auto xi = [&](const std::function<double(double)>& ga, const std::function<double(double)>& gb) {
    return numerics::adaptive_simpson([&](double s) { return ga(s) + gb(s); }, 0.0, t, 1e-13).value;
  };
  return coefficients_from_xi(xi(rates.gamma1, rates.gamma2), xi(rates.gamma2, rates.gamma3));
}

KrausSet depolarizing_kraus(double t, const PauliRates& rates) {
  return kraus_from_coefficients(depolarizing_coefficients(t, rates));
}

KrausSet depolarizing_kraus(double t, const RateSchedule& rates) {
  return kraus_from_coefficients(depolarizing_coefficients(t, rates));
}

KrausFamily depolarizing_family(const PauliRates& rates) {
  rates.validate();
  return {2, [rates](double t) { return depolarizing_kraus(t, rates); }};
}

DensityMatrix pauli_map_closed_form(const DensityMatrix& rho0, double t, const PauliRates& rates) {
  if (rho0.dim() != 2) throw ContractViolation("pauli_map_closed_form: qubit input required");
  const auto c = depolarizing_coefficients(t, rates);
  const ComplexMatrix& r = rho0.matrix();
  ComplexMatrix out(2, 2);
  out(0, 0) = c.a1 * r(0, 0) + c.a2 * r(1, 1);
  out(1, 1) = 1.0 - out(0, 0);
  out(0, 1) = c.a3 * r(0, 1);
  out(1, 0) = c.a3 * r(1, 0);
  return DensityMatrix::normalized(out);
}

KrausSet pauli_channel_kraus(double t, const PauliRates& rates) {
  require_time(t, "pauli_channel_kraus");
  rates.validate();
  const double lx = std::exp(-2.0 * (rates.gamma2 + rates.gamma3) * t);
  const double ly = std::exp(-2.0 * (rates.gamma1 + rates.gamma3) * t);
  const double lz = std::exp(-2.0 * (rates.gamma1 + rates.gamma2) * t);
  const double p[4] = {
      0.25 * (1.0 + lx + ly + lz),
      0.25 * (1.0 + lx - ly - lz),
      0.25 * (1.0 - lx + ly - lz),
      0.25 * (1.0 - lx - ly + lz),
  };
  const auto sigma = pauli::all();
  KrausSet out;
  out.reserve(4);
  for (int i = 0; i < 4; ++i) out.push_back(std::sqrt(std::max(p[i], 0.0)) * sigma[i]);
  return out;
}

KrausFamily pauli_channel_family(const PauliRates& rates) {
  rates.validate();
  return {2, [rates](double t) { return pauli_channel_kraus(t, rates); }};
}

DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho) {
  if (kraus.empty()) throw ContractViolation("apply_channel: empty Kraus set");
  for (const auto& k : kraus) {
    if (k.rows() != rho.dim() || k.cols() != rho.dim()) {
      throw ContractViolation("apply_channel: Kraus operator dimension mismatch");
    }
  }
  if (trace_preservation_defect(kraus) > 1e-10) {
    throw ContractViolation("apply_channel: Kraus set is not trace preserving");
  }
  return DensityMatrix::normalized(apply_kraus(kraus, rho.matrix()));
}

Complex root_of_unity_power(int d, long n) {
  long r = n % d;
  if (r < 0) r += d;
  const double angle = 2.0 * M_PI * static_cast<double>(r) / d;
  return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix weyl_operator(int d, int k, int l) {
  if (d < 1 || k < 0 || k >= d || l < 0 || l >= d) {
    throw DomainError("weyl_operator: indices must satisfy 0 <= k, l < d");
  }
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    w(m, (m + l) % d) = root_of_unity_power(d, static_cast<long>(m) * k);
  }
  return w;
}

GeneralizedPauliSpec::GeneralizedPauliSpec(RealMatrix probabilities) : p_(std::move(probabilities)) {
  if (p_.rows() < 2 || p_.rows() != p_.cols()) {
    throw ContractViolation("GeneralizedPauliSpec: probabilities must be d x d with d >= 2");
  }
  if (!p_.allFinite() || p_.minCoeff() < 0.0) {
    throw ContractViolation("GeneralizedPauliSpec: probabilities must be non-negative");
  }
  if (std::abs(p_.sum() - 1.0) > 1e-12) {
    throw ContractViolation("GeneralizedPauliSpec: probabilities must sum to 1");
  }
}

GeneralizedPauliSpec GeneralizedPauliSpec::identity(int d) {
  RealMatrix p = RealMatrix::Zero(d, d);
  p(0, 0) = 1.0;
  return GeneralizedPauliSpec(p);
}

GeneralizedPauliSpec GeneralizedPauliSpec::uniform(int d) {
  return GeneralizedPauliSpec(RealMatrix::Constant(d, d, 1.0 / (d * d)));
}

KrausSet generalized_pauli_kraus(const GeneralizedPauliSpec& spec) {
  KrausSet out;
  const int d = spec.dim();
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (spec.p(k, l) > 0.0) out.push_back(std::sqrt(spec.p(k, l)) * weyl_operator(d, k, l));
    }
  }
  return out;
}

LinearMap classical_mixture_linear_map(KrausSet kraus1, KrausSet kraus2, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("classical_mixture_map: p must lie in [0, 1]");
  return [k1 = std::move(kraus1), k2 = std::move(kraus2), p](const ComplexMatrix& x) {
    const ComplexMatrix one_after_two = apply_kraus(k1, apply_kraus(k2, x));
    const ComplexMatrix two_after_one = apply_kraus(k2, apply_kraus(k1, x));
    return ComplexMatrix(p * one_after_two + (1.0 - p) * two_after_one);
  };
}

DensityMatrix classical_mixture_map(const KrausSet& kraus1, const KrausSet& kraus2, double p,
                                    const DensityMatrix& rho) {
  if (kraus1.empty() || kraus2.empty() || kraus1.front().rows() != rho.dim() ||
      kraus2.front().rows() != rho.dim()) {
    throw ContractViolation("classical_mixture_map: dimension mismatch");
  }
  return DensityMatrix::normalized(classical_mixture_linear_map(kraus1, kraus2, p)(rho.matrix()));
}

}  // namespace qswitch
