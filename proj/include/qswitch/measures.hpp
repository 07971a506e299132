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
#include <optional>
#include <string>
#include <vector>

#include "qswitch/channels.hpp"
#include "qswitch/lindblad.hpp"
#include "qswitch/linalg.hpp"
#include "qswitch/switch.hpp"

namespace qswitch {

// ---------------------------------------------------------------------------
// Dynamics adapters

/// rho, t -> Phi_t(rho).
using StateDynamics = std::function<DensityMatrix(const DensityMatrix&, double)>;

StateDynamics channel_dynamics(KrausFamily family);
/// Effect branch of the joint-space switch of the family with itself.
StateDynamics switched_dynamics(KrausFamily family, SwitchConfig config);

MapFamily channel_map_family(KrausFamily family);
/// post_selected_map of the family switched with itself.
MapFamily switched_map_family(KrausFamily family, SwitchConfig config);

// ---------------------------------------------------------------------------
// Information loss and switch-induced memory

/// D(rho1(0), rho2(0)) - D(rho1(t), rho2(t)).
double info_loss(const DensityMatrix& rho1_0, const DensityMatrix& rho2_0,
                 const DensityMatrix& rho1_t, const DensityMatrix& rho2_t);

/// Q_S(t) = D(Phi^S_t(rho), Phi^e_t(rho)).
double qsm(const DensityMatrix& rho, double t, const StateDynamics& switched,
           const StateDynamics& ergodic);

struct QsiRecord {
  double t;
  double info_loss_switch;   // Delta I_S
  double qsm;                // Q_S
  double info_loss_ergodic;  // Delta I_e
  double deviation;          // Delta I_S + Q_S - Delta I_e, never below -1e-10
};

/// Information inequality along `times` for the depolarizing channel
/// (gamma_i = gamma) and its switched version, with tau = I/2. Throws
/// ContractViolation if tau is not a fixed point of the switched map at some t.
std::vector<QsiRecord> qsi_series(const DensityMatrix& rho, double gamma,
                                  const std::vector<double>& times,
                                  const SwitchConfig& config = SwitchConfig::ideal());

struct TimeAverage {
  DensityMatrix state;
  /// max-entry difference between the averages over [0, T] and [0, T/2].
  double residual;
};

/// (1/T) int_0^T Phi_t(rho) dt by adaptive quadrature. Throws ConvergenceError
/// when the averages over [0, T_max] and [0, T_max/2] differ by more than tol.
TimeAverage time_averaged_state(const StateDynamics& map, const DensityMatrix& rho, double t_max,
                                double tol);

struct TimeAverageEquality {
  double residual;             // |Delta I_S + Q_S - D(rho, tau)| on time averages
  double info_loss_switch;     // D(rho, tau) - D(avg_S, tau)
  double qsm;                  // D(avg_S, avg_e)
  double distance;             // D(rho, tau)
};

/// The time averages are certified at the Cesaro rate: tolerance 1/(gamma T_max).
TimeAverageEquality time_avg_equality_check(const DensityMatrix& rho, double gamma, double t_max,
                                            const SwitchConfig& config = SwitchConfig::ideal());

// ---------------------------------------------------------------------------
// Non-Markovianity

/// Root of gamma_S_closed_form by bisection on [1e-6/gamma, 10/gamma].
double characteristic_time(double gamma);

/// d/dt D(Phi_t(rho), tau), Richardson-extrapolated differences with step h.
double blp_rate(const StateDynamics& dynamics, const DensityMatrix& rho, const DensityMatrix& tau,
                double t, double h);

struct BlpResult {
  double t_minus;
  double d_at_t_minus;      // D(Phi^S_{T-}(rho), tau)
  double d_at_infinity;     // D(Phi^S_{50/gamma}(rho), tau)
  double n_inf;             // endpoint form
  double n_inf_quadrature;  // int max(B, 0) dt over [0, 50/gamma]
  double quadrature_error;
  bool has_backflow;
};

/// BLP measure for the switched depolarizing channel and tau = I/2. For the
/// ideal switch T- is characteristic_time(gamma); otherwise it is the first
/// time the distance starts to grow. Throws ConvergenceError when the state at
/// 50/gamma and 100/gamma differs by more than 1e-12.
BlpResult blp_measure(const DensityMatrix& rho, double gamma,
                      const SwitchConfig& config = SwitchConfig::ideal());

/// g(t) = (||(id (x) Phi_{t+dt} Phi_t^{-1})|psi><psi|||_1 - 1) / dt with the
/// incremental map formed from transfer matrices and the O(dt) bias removed by
/// Richardson extrapolation (dt and dt/2). Throws InversionError when F(t) is
/// singular.
double rhp_g(const MapFamily& map_family, double t, double dt);

struct RhpWindow {
  double begin;
  double end;
};

struct RhpResult {
  double n_s;
  double n_s_normalized;
  double t_minus;  // start of the first window, NaN when g vanishes throughout
  std::vector<RhpWindow> windows;
  double quadrature_error;
  double tail_bound;
};

/// Integral of g over every interval where g > 1e-10, up to `horizon`, split
/// at the zero crossings of every canonical rate. `time_scale` sets the scan
/// step (0.01 time_scale), the quadrature step and the derivative steps. Throws ConvergenceError when the tail beyond the
/// horizon cannot be bounded by 1e-8.
RhpResult rhp_measure_for_family(const MapFamily& map_family, double time_scale, double horizon);

/// RHP measure of the switched depolarizing channel (gamma_i = gamma).
RhpResult rhp_measure(double gamma, const SwitchConfig& config = SwitchConfig::ideal());

struct BlpBridge {
  double q_s_infinity;           // N_inf + D(Phi^S_{T-}(rho), tau)
  double n_s_infinity;           // Q/(1 + Q)
  double n_s_infinity_from_blp;  // (N_BLP + D(1 - N_BLP)) / (1 + D(1 - N_BLP))
};

BlpBridge qsm_blp_bridge(double n_inf, double d_at_t_minus);

struct NonMarkovReport {
  double gamma;
  double t_minus;
  double n_s;
  double n_s_normalized;
  double n_inf;
  double n_inf_quadrature;
  double n_blp_normalized;
  double d_at_t_minus;
  double q_s_infinity;
  double n_s_infinity;
};

NonMarkovReport nonmarkov_report(const DensityMatrix& rho, double gamma,
                                 const SwitchConfig& config = SwitchConfig::ideal());

struct NsSurface {
  std::vector<double> gamma1_grid;
  std::vector<double> gamma2_grid;
  double gamma3;
  /// values(i, j) for (gamma1_grid[i], gamma2_grid[j]); NaN where the cell failed.
  RealMatrix n_s_normalized;
  RealMatrix n_s;
  std::vector<std::vector<std::optional<std::string>>> errors;
};

/// Normalized RHP measure of the Pauli channel with rates (g1, g2, gamma3)
/// ideally switched with itself.
double ns_for_rates(const PauliRates& rates, double* n_s_raw = nullptr);

/// Cells are evaluated concurrently; a failing cell records its error.
NsSurface sweep_ns_surface(const std::vector<double>& gamma1_grid,
                           const std::vector<double>& gamma2_grid, double gamma3);

}  // namespace qswitch
