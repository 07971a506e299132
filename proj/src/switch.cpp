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

#include "qswitch/switch.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace qswitch {

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": probability must lie in [0, 1]");
  }
}

ComplexMatrix control_projector(int index) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(index, index) = 1.0;
  return m;
}

void require_compatible(const KrausSet& kraus1, const KrausSet& kraus2, const char* what) {
  if (kraus1.empty() || kraus2.empty()) {
    throw ContractViolation(std::string(what) + ": empty Kraus set");
  }
  const auto d = kraus1.front().rows();
  for (const auto* set : {&kraus1, &kraus2}) {
    for (const auto& k : *set) {
      if (k.rows() != d || k.cols() != d) {
        throw ContractViolation(std::string(what) + ": Kraus operators must share one square dimension");
      }
    }
  }
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

}  // namespace

ControlSpec ControlSpec::pure_computational(double p) {
  require_probability(p, "ControlSpec::pure_computational");
  return {Kind::kPureComputational, p};
}

ControlSpec ControlSpec::fourier_mixture(double p) {
  require_probability(p, "ControlSpec::fourier_mixture");
  return {Kind::kFourierMixture, p};
}

std::vector<std::pair<double, ComplexVector>> ControlSpec::ensemble() const {
  std::vector<std::pair<double, ComplexVector>> out;
  if (kind_ == Kind::kPureComputational) {
    ComplexVector v(2);
    v << std::sqrt(p_), std::sqrt(1.0 - p_);
    out.emplace_back(1.0, v);
  } else {
    if (p_ > 0.0) out.emplace_back(p_, plus_ket());
    if (p_ < 1.0) out.emplace_back(1.0 - p_, minus_ket());
  }
  return out;
}

ComplexMatrix ControlSpec::density() const {
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (const auto& [w, v] : ensemble()) out += w * projector(v);
  return out;
}

std::string ControlSpec::describe() const {
  return (kind_ == Kind::kPureComputational ? "pure_computational(p=" : "fourier_mixture(p=") +
         format_number(p_) + ")";
}

MeasurementSpec MeasurementSpec::pure_computational(double q) {
  require_probability(q, "MeasurementSpec::pure_computational");
  return {Kind::kPureComputational, q, 0.0};
}

MeasurementSpec MeasurementSpec::fourier_povm(double q1, double q2) {
  require_probability(q1, "MeasurementSpec::fourier_povm");
  require_probability(q2, "MeasurementSpec::fourier_povm");
  return {Kind::kFourierPovm, q1, q2};
}

MeasurementSpec MeasurementSpec::plus_projector() { return {Kind::kPlusProjector, 1.0, 0.0}; }

ComplexMatrix MeasurementSpec::effect() const {
  switch (kind_) {
    case Kind::kPureComputational: {
      ComplexVector v(2);
      v << std::sqrt(q1_), std::sqrt(1.0 - q1_);
      return projector(v);
    }
    case Kind::kFourierPovm:
      return q1_ * projector(plus_ket()) + q2_ * projector(minus_ket());
    case Kind::kPlusProjector:
      break;
  }
  return projector(plus_ket());
}

ComplexMatrix MeasurementSpec::complement() const {
  return ComplexMatrix::Identity(2, 2) - effect();
}

std::string MeasurementSpec::describe() const {
  switch (kind_) {
    case Kind::kPureComputational:
      return "pure_computational(q=" + format_number(q1_) + ")";
    case Kind::kFourierPovm:
      return "fourier_povm(q1=" + format_number(q1_) + ",q2=" + format_number(q2_) + ")";
    case Kind::kPlusProjector:
      break;
  }
  return "plus_projector";
}

SwitchConfig SwitchConfig::quantum_noise(double p, double q) {
  return {ControlSpec::pure_computational(p), MeasurementSpec::pure_computational(q)};
}

SwitchConfig SwitchConfig::classical_noise(double p, double q1, double q2) {
  return {ControlSpec::fourier_mixture(p), MeasurementSpec::fourier_povm(q1, q2)};
}

bool SwitchConfig::is_ideal() const {
  if (control.kind() != ControlSpec::Kind::kFourierMixture || control.p() != 1.0) return false;
  return measurement.kind() == MeasurementSpec::Kind::kPlusProjector ||
         (measurement.kind() == MeasurementSpec::Kind::kFourierPovm && measurement.q1() == 1.0 &&
          measurement.q2() == 0.0);
}

std::string SwitchConfig::describe() const {
  if (is_ideal() && measurement.kind() == MeasurementSpec::Kind::kPlusProjector) return "ideal";
  if (control.kind() == ControlSpec::Kind::kPureComputational &&
      measurement.kind() == MeasurementSpec::Kind::kPureComputational) {
    return "quantum_noise(p=" + format_number(control.p()) + ",q=" + format_number(measurement.q()) + ")";
  }
  if (control.kind() == ControlSpec::Kind::kFourierMixture &&
      measurement.kind() == MeasurementSpec::Kind::kFourierPovm) {
    return "classical_noise(p=" + format_number(control.p()) + ",q1=" + format_number(measurement.q1()) +
           ",q2=" + format_number(measurement.q2()) + ")";
  }
  return "control=" + control.describe() + ",measurement=" + measurement.describe();
}

KrausSet switch_joint_kraus(const KrausSet& kraus1, const KrausSet& kraus2) {
  require_compatible(kraus1, kraus2, "switch_joint_kraus");
  const ComplexMatrix p0 = control_projector(0);
  const ComplexMatrix p1 = control_projector(1);
  KrausSet out;
  out.reserve(kraus1.size() * kraus2.size());
  for (const auto& ki : kraus1) {
    for (const auto& kj : kraus2) {
      out.push_back(kron(kj * ki, p0) + kron(ki * kj, p1));
    }
  }
  return out;
}

ComplexMatrix switch_unnormalized(const KrausSet& kraus1, const KrausSet& kraus2,
                                  const ComplexMatrix& x, const ComplexMatrix& control_density,
                                  const ComplexMatrix& effect) {
  const KrausSet joint = switch_joint_kraus(kraus1, kraus2);
  const int d = static_cast<int>(kraus1.front().rows());
  if (x.rows() != d || x.cols() != d) {
    throw ContractViolation("switch_unnormalized: input dimension does not match the channels");
  }
  const ComplexMatrix evolved = apply_kraus(joint, kron(x, control_density));
  const ComplexMatrix measured = kron(ComplexMatrix::Identity(d, d), effect) * evolved;
  return partial_trace_control(measured, d);
}

SwitchBranches switch_apply(const KrausSet& kraus1, const KrausSet& kraus2,
                            const DensityMatrix& rho, const SwitchConfig& config) {
  require_compatible(kraus1, kraus2, "switch_apply");
  if (trace_preservation_defect(kraus1) > 1e-10 || trace_preservation_defect(kraus2) > 1e-10) {
    throw ContractViolation("switch_apply: Kraus sets must be trace preserving");
  }
  const int d = rho.dim();
  if (kraus1.front().rows() != d) {
    throw ContractViolation("switch_apply: state dimension does not match the channels");
  }
  const KrausSet joint = switch_joint_kraus(kraus1, kraus2);
  const ComplexMatrix evolved = apply_kraus(joint, kron(rho.matrix(), config.control.density()));
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  const ComplexMatrix on_effect =
      partial_trace_control(kron(id, config.measurement.effect()) * evolved, d);
  const ComplexMatrix on_complement =
      partial_trace_control(kron(id, config.measurement.complement()) * evolved, d);

  const double p_effect = on_effect.trace().real();
  const double p_complement = on_complement.trace().real();
  if (p_effect < kDegenerateBranchProbability) {
    throw DegenerateBranchError("switch_apply: post-selected branch has vanishing probability",
                                p_effect);
  }
  SwitchBranches out{{DensityMatrix::normalized(on_effect), p_effect}, p_complement, std::nullopt};
  if (p_complement >= kDegenerateBranchProbability) {
    out.complement_state = DensityMatrix::normalized(on_complement);
  }
  return out;
}

std::vector<ReducedCoefficients> reduced_coefficients(const SwitchConfig& config) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> effect_eig(config.measurement.effect());
  std::vector<ReducedCoefficients> out;
  for (const auto& [weight, psi] : config.control.ensemble()) {
    for (int l = 0; l < 2; ++l) {
      const double m = effect_eig.eigenvalues()(l);
      if (m <= 1e-15) continue;
      const ComplexVector e = effect_eig.eigenvectors().col(l);
      const double scale = std::sqrt(weight * m);
      // <e_l|c> = conj(e_l[c])
      out.push_back({scale * std::conj(e(0)) * psi(0), scale * std::conj(e(1)) * psi(1)});
    }
  }
  return out;
}

KrausSet reduced_kraus(const KrausSet& kraus1, const KrausSet& kraus2, const SwitchConfig& config) {
  require_compatible(kraus1, kraus2, "reduced_kraus");
  const auto coefficients = reduced_coefficients(config);
  KrausSet out;
  out.reserve(kraus1.size() * kraus2.size() * coefficients.size());
  for (const auto& ki : kraus1) {
    for (const auto& kj : kraus2) {
      const ComplexMatrix two_after_one = kj * ki;
      const ComplexMatrix one_after_two = ki * kj;
      for (const auto& c : coefficients) {
        out.push_back(c.chi1 * two_after_one + c.chi2 * one_after_two);
      }
    }
  }
  return out;
}

LinearMap post_selected_map(const KrausSet& kraus1, const KrausSet& kraus2,
                            const SwitchConfig& config, double tol) {
  KrausSet kraus = reduced_kraus(kraus1, kraus2, config);
  const auto d = kraus.front().rows();
  ComplexMatrix normalizer = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) normalizer.noalias() += k.adjoint() * k;
  const double scale = normalizer.trace().real() / static_cast<double>(d);
  if (scale < kDegenerateBranchProbability) {
    throw DegenerateBranchError("post_selected_map: post-selected branch has vanishing probability",
                                scale);
  }
  if (max_abs(normalizer - scale * ComplexMatrix::Identity(d, d)) > tol) {
    throw LinearityError("post_selected_map: branch probability depends on the input state");
  }
  return [kraus = std::move(kraus), scale](const ComplexMatrix& x) {
    return ComplexMatrix(apply_kraus(kraus, x) / scale);
  };
}

double switched_decay_factor(double t, double gamma) {
  // Numerator and denominator divided by G^2 so that large t does not overflow.
  const double u = std::exp(-4.0 * gamma * t);
  return (1.0 - 2.0 * u + 9.0 * u * u) / (5.0 + 6.0 * u - 3.0 * u * u);
}

DensityMatrix closed_form_switched_map(const DensityMatrix& rho0, double t, double gamma) {
  if (rho0.dim() != 2) throw ContractViolation("closed_form_switched_map: qubit input required");
  if (!(t >= 0.0)) throw DomainError("closed_form_switched_map: time must be non-negative");
  if (!(gamma > 0.0)) throw DomainError("closed_form_switched_map: gamma must be positive");
  const double c = switched_decay_factor(t, gamma);
  const double a = 0.5 * (1.0 + c);
  const double b = 0.5 * (1.0 - c);
  const ComplexMatrix& r = rho0.matrix();
  ComplexMatrix out(2, 2);
  out(0, 0) = a * r(0, 0) + b * r(1, 1);
  out(1, 1) = b * r(0, 0) + a * r(1, 1);
  out(0, 1) = c * r(0, 1);
  out(1, 0) = c * r(1, 0);
  return DensityMatrix::normalized(out);
}

double closed_form_Cpq(double t, double gamma, double p, double q) {
  require_probability(p, "closed_form_Cpq");
  require_probability(q, "closed_form_Cpq");
  const double u = std::exp(-4.0 * gamma * t);
  const double f = std::sqrt(p * (1.0 - p)) * std::sqrt(q * (1.0 - q));
  const double mix = p * (4.0 * q - 2.0);
  // Both sides divided by G^2.
  const double num = f * (1.0 - 2.0 * u + 5.0 * u * u) + (mix + 2.0 * (1.0 - q)) * u * u;
  const double den = f * (1.0 + 6.0 * u - 3.0 * u * u) + mix;
  if (std::abs(den) < 1e-14) {
    throw SingularExpressionError("closed_form_Cpq: vanishing denominator");
  }
  return num / den;
}

double closed_form_Cpq1q2(double t, double gamma, double p, double q1, double q2) {
  require_probability(p, "closed_form_Cpq1q2");
  require_probability(q1, "closed_form_Cpq1q2");
  require_probability(q2, "closed_form_Cpq1q2");
  const double u = std::exp(-4.0 * gamma * t);
  const double u2 = u * u;
  // Every coefficient divided by G^2.
  const double common = (-1.0 + 2.0 * p) + (2.0 - 4.0 * p) * u;
  const double num = ((-1.0 + 10.0 * p) * u2 + common) * q1 - ((-9.0 + 10.0 * p) * u2 + common) * q2;
  const double den = ((3.0 - 6.0 * p) * u2 + (3.0 + 2.0 * p) + 6.0 * (-1.0 + 2.0 * p) * u) * q1 -
                     ((3.0 - 6.0 * p) * u2 + (-5.0 + 2.0 * p) + (-1.0 + 2.0 * p) * u) * q2;
  if (std::abs(den) < 1e-14) {
    throw SingularExpressionError("closed_form_Cpq1q2: vanishing denominator");
  }
  return num / den;
}

double switched_contraction(double t, double gamma, const SwitchConfig& config) {
  const KrausSet k = depolarizing_kraus(t, PauliRates::uniform(gamma));
  const auto branches = switch_apply(k, k, DensityMatrix::basis_state(2, 1), config);
  const ComplexMatrix& out = branches.effect.state.matrix();
  return (out(1, 1) - out(0, 0)).real();
}

std::string ClosedFormCheck::to_json() const {
  std::ostringstream os;
  os << std::setprecision(12) << "{\"expression\":\"" << expression << "\",\"config\":\"" << config
     << "\",\"gamma\":" << gamma << ",\"max_gap\":" << max_gap << ",\"worst_time\":" << worst_time
     << ",\"tolerance\":" << tolerance << "}";
  return os.str();
}

ClosedFormCheck check_closed_form_against_switch(const SwitchConfig& config, double gamma,
                                                 const std::vector<double>& times, double tolerance) {
  using CK = ControlSpec::Kind;
  using MK = MeasurementSpec::Kind;
  std::function<double(double)> closed;
  std::string name;
  if (config.is_ideal() && config.measurement.kind() == MK::kPlusProjector) {
    name = "C";
    closed = [gamma](double t) { return switched_decay_factor(t, gamma); };
  } else if (config.control.kind() == CK::kPureComputational &&
             config.measurement.kind() == MK::kPureComputational) {
    name = "C_pq";
    const double p = config.control.p(), q = config.measurement.q();
    closed = [=](double t) { return closed_form_Cpq(t, gamma, p, q); };
  } else if (config.control.kind() == CK::kFourierMixture &&
             config.measurement.kind() == MK::kFourierPovm) {
    name = "C_pq1q2";
    const double p = config.control.p(), q1 = config.measurement.q1(), q2 = config.measurement.q2();
    closed = [=](double t) { return closed_form_Cpq1q2(t, gamma, p, q1, q2); };
  } else {
    throw ContractViolation("check_closed_form_against_switch: no closed form for " +
                            config.describe());
  }
  ClosedFormCheck out{name, config.describe(), gamma, 0.0, 0.0, tolerance};
  for (double t : times) {
    const double gap = std::abs(closed(t) - switched_contraction(t, gamma, config));
    if (gap > out.max_gap || std::isnan(gap)) {
      out.max_gap = gap;
      out.worst_time = t;
    }
  }
  return out;
}

double verify_statement1(const GeneralizedPauliSpec& spec, const SwitchConfig& config) {
  const KrausSet k = generalized_pauli_kraus(spec);
  const auto tau = DensityMatrix::maximally_mixed(spec.dim());
  const auto branches = switch_apply(k, k, tau, config);
  return max_abs(branches.effect.state.matrix() - tau.matrix());
}

double ideal_switch_trace(const GeneralizedPauliSpec& spec) {
  const int d = spec.dim();
  Complex sum = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
          const double w = spec.p(k, l) * spec.p(r, s);
          if (w == 0.0) continue;
          sum += 0.5 * w * (1.0 + root_of_unity_power(d, static_cast<long>(k) * s - static_cast<long>(r) * l));
        }
  return sum.real();
}

Statement2Result verify_statement2(const GeneralizedPauliSpec& spec,
                                   const std::vector<DensityMatrix>& sample_states,
                                   const SwitchConfig& config) {
  if (sample_states.size() < 2) {
    throw ContractViolation("verify_statement2: at least two sample states are required");
  }
  const KrausSet k = generalized_pauli_kraus(spec);
  const ComplexMatrix omega = config.control.density();
  const ComplexMatrix effect = config.measurement.effect();
  std::vector<double> traces;
  traces.reserve(sample_states.size());
  for (const auto& rho : sample_states) {
    if (rho.dim() != spec.dim()) throw ContractViolation("verify_statement2: state dimension mismatch");
    traces.push_back(switch_unnormalized(k, k, rho.matrix(), omega, effect).trace().real());
  }
  const auto [lo, hi] = std::minmax_element(traces.begin(), traces.end());
  return {*hi - *lo, traces.front(), ideal_switch_trace(spec)};
}

}  // namespace qswitch
