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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qswitch/channels.hpp"
#include "qswitch/linalg.hpp"

namespace qswitch {

// Convention used throughout: the control qubit is the second tensor factor,
// and control |0> selects the order N2 o N1 (N1 acts first):
//   S_ij = K2_j K1_i (x) |0><0| + K1_i K2_j (x) |1><1|.

/// Preparation of the control qubit.
class ControlSpec {
 public:
  enum class Kind { kPureComputational, kFourierMixture };

  /// sqrt(p)|0> + sqrt(1-p)|1>
  static ControlSpec pure_computational(double p);
  /// p |+><+| + (1-p) |-><-|
  static ControlSpec fourier_mixture(double p);
  /// |+><+|
  static ControlSpec ideal() { return fourier_mixture(1.0); }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  ComplexMatrix density() const;
  /// Pure-state decomposition {(weight, ket)} with zero weights dropped.
  std::vector<std::pair<double, ComplexVector>> ensemble() const;
  std::string describe() const;

 private:
  ControlSpec(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

/// The post-selected effect measured on the control qubit. Its complement is
/// I - effect.
class MeasurementSpec {
 public:
  enum class Kind { kPureComputational, kFourierPovm, kPlusProjector };

  /// |M_q><M_q| with |M_q> = sqrt(q)|0> + sqrt(1-q)|1>
  static MeasurementSpec pure_computational(double q);
  /// q1 |+><+| + q2 |-><-|
  static MeasurementSpec fourier_povm(double q1, double q2);
  /// |+><+|
  static MeasurementSpec plus_projector();

  Kind kind() const { return kind_; }
  double q() const { return q1_; }
  double q1() const { return q1_; }
  double q2() const { return q2_; }
  ComplexMatrix effect() const;
  ComplexMatrix complement() const;
  std::string describe() const;

 private:
  MeasurementSpec(Kind kind, double q1, double q2) : kind_(kind), q1_(q1), q2_(q2) {}
  Kind kind_;
  double q1_;
  double q2_;
};

struct SwitchConfig {
  ControlSpec control = ControlSpec::ideal();
  MeasurementSpec measurement = MeasurementSpec::plus_projector();

  static SwitchConfig ideal() { return {}; }
  /// Control sqrt(p)|0> + sqrt(1-p)|1>, effect |M_q><M_q|.
  static SwitchConfig quantum_noise(double p, double q);
  /// Control p|+><+| + (1-p)|-><-|, effect q1|+><+| + q2|-><-|.
  static SwitchConfig classical_noise(double p, double q1, double q2);

  /// Control |+><+| with effect |+><+|, in either parametrization.
  bool is_ideal() const;
  std::string describe() const;
};

struct SwitchOutcome {
  DensityMatrix state;
  double probability;
};

/// Both measurement branches. The complement state is absent when its
/// probability is below the degeneracy threshold.
struct SwitchBranches {
  SwitchOutcome effect;
  double complement_probability;
  std::optional<DensityMatrix> complement_state;
};

/// Probabilities below this make the normalized branch state undefined.
inline constexpr double kDegenerateBranchProbability = 1e-14;

/// Joint Kraus operators on system (x) control, ordered i-major over kraus1.
KrausSet switch_joint_kraus(const KrausSet& kraus1, const KrausSet& kraus2);

/// Unnormalized system operator Tr_c[(I (x) E) S(x (x) omega_c)] for an
/// arbitrary operator x; linear in x. `effect` is a 2 x 2 control operator.
ComplexMatrix switch_unnormalized(const KrausSet& kraus1, const KrausSet& kraus2,
                                  const ComplexMatrix& x, const ComplexMatrix& control_density,
                                  const ComplexMatrix& effect);

/// Full joint-space evolution of rho (x) omega_c, measurement of the control,
/// partial trace and normalization. Throws DegenerateBranchError when the
/// effect branch has probability < 1e-14, ContractViolation when either Kraus
/// set is not trace preserving.
SwitchBranches switch_apply(const KrausSet& kraus1, const KrausSet& kraus2,
                            const DensityMatrix& rho, const SwitchConfig& config);

/// Coefficients of one reduced Kraus term chi1 K2_j K1_i + chi2 K1_i K2_j.
/// There is one term per (control ensemble member, effect eigenvector).
struct ReducedCoefficients {
  Complex chi1;
  Complex chi2;
};

std::vector<ReducedCoefficients> reduced_coefficients(const SwitchConfig& config);

/// System-only Kraus operators whose operator sum equals the unnormalized
/// effect branch of switch_apply. For the ideal switch these are
/// (K_i K_j + K_j K_i) / 2.
KrausSet reduced_kraus(const KrausSet& kraus1, const KrausSet& kraus2, const SwitchConfig& config);

/// Normalized effect-branch map as a linear map, built from reduced_kraus.
/// The normalizer Tr[sum K~^dagger K~ rho] must be state independent; throws
/// LinearityError when sum K~^dagger K~ is not proportional to the identity
/// within `tol`, DegenerateBranchError when it vanishes.
LinearMap post_selected_map(const KrausSet& kraus1, const KrausSet& kraus2,
                            const SwitchConfig& config, double tol = 1e-10);

/// Bloch contraction C(t) of the ideally switched depolarizing channel
/// (gamma_i = gamma) switched with itself:
///   C = (G^2 - 2G + 9) / (5G^2 + 6G - 3), G = e^{4 gamma t}.
double switched_decay_factor(double t, double gamma);

/// Populations mix with (1 +- C)/2, coherences scale with C.
DensityMatrix closed_form_switched_map(const DensityMatrix& rho0, double t, double gamma);

/// Reference contraction for control sqrt(p)|0>+sqrt(1-p)|1>, effect |M_q><M_q|:
///   (f_p f_q (G^2 - 2G + 5) + p(4q - 2) + 2(1 - q))
///   / (f_p f_q (G^2 + 6G - 3) + p(4q - 2) G^2),  f_x = sqrt(x(1 - x)).
/// Evaluated verbatim; it does not agree with the joint-space evolution in
/// general (see check_closed_form_against_switch). Throws
/// SingularExpressionError when |denominator| < 1e-14.
double closed_form_Cpq(double t, double gamma, double p, double q);

/// Reference contraction for control p|+><+| + (1-p)|-><-| and effect
/// q1|+><+| + q2|-><-|, evaluated verbatim.
double closed_form_Cpq1q2(double t, double gamma, double p, double q1, double q2);

/// Bloch contraction of the switched depolarizing channel, obtained by
/// switch_apply on |1><1|: C = <1|out|1> - <0|out|0>.
double switched_contraction(double t, double gamma, const SwitchConfig& config);

/// Disagreement between a closed-form contraction and the joint-space
/// evolution over a time grid.
struct ClosedFormCheck {
  std::string expression;
  std::string config;
  double gamma;
  double max_gap;
  double worst_time;
  double tolerance;
  bool agrees() const { return max_gap <= tolerance; }
  /// One-line JSON rendering, used for warnings.
  std::string to_json() const;
};

/// Compares the reference expression matching `config` (C(t), C_pq or
/// C_pq1q2) against switched_contraction on `times`.
ClosedFormCheck check_closed_form_against_switch(const SwitchConfig& config, double gamma,
                                                 const std::vector<double>& times,
                                                 double tolerance = 1e-10);

/// max |Phi^S(I/d) - I/d| for the generalized Pauli channel switched with
/// itself, computed by joint-space evolution.
double verify_statement1(const GeneralizedPauliSpec& spec, const SwitchConfig& config);

struct Statement2Result {
  double max_spread;        // max pairwise difference of the effect-branch traces
  double common_trace;      // trace for the first sample state
  double analytic_trace;    // sum p_kl p_rs (1 + omega^{ks - rl}) / 2, ideal switch
};

Statement2Result verify_statement2(const GeneralizedPauliSpec& spec,
                                   const std::vector<DensityMatrix>& sample_states,
                                   const SwitchConfig& config = SwitchConfig::ideal());

/// sum_{k,l,r,s} p_kl p_rs (1 + omega^{ks - rl}) / 2 (real part).
double ideal_switch_trace(const GeneralizedPauliSpec& spec);

}  // namespace qswitch
