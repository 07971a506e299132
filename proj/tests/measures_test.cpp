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

#include <gtest/gtest.h>

#include <cmath>

#include "qswitch/measures.hpp"
#include "qswitch/numerics.hpp"
#include "qswitch/random.hpp"

namespace qswitch {
namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kTMinusUnit = std::log(3.0 + 2.0 * kSqrt3) / 4.0;
const double kNs = 1.5 * std::log(3.0 / (5.0 * (2.0 * kSqrt3 - 3.0)));
const double kNinf = 0.1 - (2.0 * kSqrt3 - 3.0) / 6.0;

KrausFamily depolarizing(double gamma) { return depolarizing_family(PauliRates::uniform(gamma)); }

const DensityMatrix& excited() {
  static const DensityMatrix one = DensityMatrix::basis_state(2, 1);
  return one;
}

TEST(InfoLoss, Examples) {
  Rng rng(1);
  const auto a = random_density_matrix(2, rng);
  const auto b = random_density_matrix(2, rng);
  EXPECT_NEAR(info_loss(a, b, a, b), 0.0, 1e-15);
  const auto tau = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(info_loss(a, tau, tau, tau), trace_distance(a, tau), 1e-15);
}

TEST(Qsm, Examples) {
  const double g = 1.0;
  const auto switched = switched_dynamics(depolarizing(g), SwitchConfig::ideal());
  const auto ergodic = channel_dynamics(depolarizing(g));
  EXPECT_NEAR(qsm(excited(), 0.0, switched, ergodic), 0.0, 1e-14);
  for (double t : {0.1, 0.5, 2.0}) {
    EXPECT_NEAR(qsm(excited(), t, switched, ergodic),
                std::abs(switched_decay_factor(t, g) - std::exp(-4 * g * t)) / 2.0, 1e-12);
  }
  const KrausFamily identity{2, [](double) { return KrausSet{ComplexMatrix::Identity(2, 2)}; }};
  Rng rng(2);
  const auto rho = random_density_matrix(2, rng);
  EXPECT_NEAR(qsm(rho, 1.0, switched_dynamics(identity, SwitchConfig::ideal()), channel_dynamics(identity)), 0.0,
              1e-14);
}

TEST(QsiSeries, IdealShape) {
  const auto times = numerics::linspace(0.0, 5.0, 200);
  const auto records = qsi_series(excited(), 1.0, times);
  EXPECT_NEAR(records.front().deviation, 0.0, 1e-14);
  double peak = 0.0;
  for (const auto& r : records) {
    EXPECT_GE(r.deviation, -1e-10);
    // Independent closed form: deviation = max(e^{-4t} - C(t), 0).
    EXPECT_NEAR(r.deviation, std::max(std::exp(-4 * r.t) - switched_decay_factor(r.t, 1.0), 0.0), 1e-10);
    peak = std::max(peak, r.deviation);
  }
  EXPECT_GT(peak, 1e-3);
  EXPECT_LE(records.back().deviation, 1e-6);
}

TEST(QsiSeries, NoisyConfigsAndRandomStates) {
  Rng rng(3);
  const auto times = numerics::linspace(0.0, 4.0, 60);
  for (int trial = 0; trial < 10; ++trial) {
    const auto config = random_noisy_config(rng);
    const auto rho = random_density_matrix(2, rng);
    for (const auto& r : qsi_series(rho, rng.uniform(0.3, 2.0), times, config)) {
      EXPECT_GE(r.deviation, -1e-10) << config.describe();
    }
  }
}

TEST(TimeAverage, Examples) {
  Rng rng(4);
  const auto rho = random_density_matrix(2, rng);
  const auto plain = time_averaged_state(channel_dynamics(depolarizing(1.0)), rho, 200.0, 1e-2);
  EXPECT_LT(max_abs(plain.state.matrix() - ComplexMatrix::Identity(2, 2) / 2.0), 1.0 / 200.0);

  const auto sw = time_averaged_state(switched_dynamics(depolarizing(1.0), SwitchConfig::ideal()), excited(),
                                      400.0, 1e-2);
  EXPECT_NEAR(sw.state(0, 0).real(), 0.4, 1.0 / 400.0);
  EXPECT_NEAR(sw.state(1, 1).real(), 0.6, 1.0 / 400.0);

  const StateDynamics identity = [](const DensityMatrix& r, double) { return r; };
  EXPECT_LT(max_abs(time_averaged_state(identity, rho, 10.0, 1e-12).state.matrix() - rho.matrix()), 1e-12);

  EXPECT_THROW(time_averaged_state(channel_dynamics(depolarizing(1.0)), excited(), 5.0, 1e-6), ConvergenceError);
}

TEST(TimeAverageEquality, Examples) {
  const auto r50 = time_avg_equality_check(excited(), 1.0, 50.0);
  const auto r100 = time_avg_equality_check(excited(), 1.0, 100.0);
  EXPECT_LE(r50.residual, 1e-2);
  EXPECT_LT(r100.residual, r50.residual);
  EXPECT_NEAR(r100.info_loss_switch, 0.4, 1e-2);
  EXPECT_NEAR(r100.qsm, 0.1, 1e-2);
  const auto flat = time_avg_equality_check(DensityMatrix::maximally_mixed(2), 1.0, 50.0);
  EXPECT_NEAR(flat.residual, 0.0, 1e-12);
  EXPECT_NEAR(flat.qsm, 0.0, 1e-12);
  EXPECT_NEAR(flat.info_loss_switch, 0.0, 1e-12);
}

TEST(CharacteristicTime, Examples) {
  EXPECT_NEAR(characteristic_time(1.0), kTMinusUnit, 1e-12);
  EXPECT_NEAR(characteristic_time(1.0), 0.466566, 1e-6);
  EXPECT_NEAR(characteristic_time(2.0), characteristic_time(1.0) / 2.0, 1e-14);
  EXPECT_THROW(characteristic_time(-1.0), DomainError);
}

TEST(Blp, Examples) {
  const auto r = blp_measure(excited(), 1.0);
  EXPECT_TRUE(r.has_backflow);
  EXPECT_NEAR(r.n_inf, kNinf, 1e-8);
  EXPECT_NEAR(r.n_inf_quadrature, kNinf, 1e-6);
  EXPECT_NEAR(r.d_at_infinity, 0.1, 1e-12);

  EXPECT_NEAR(blp_measure(DensityMatrix::maximally_mixed(2), 1.0).n_inf, 0.0, 1e-15);
  // Equal effect weights select the definite-order average: monotone decay.
  const auto monotone = blp_measure(excited(), 1.0, SwitchConfig::classical_noise(0.5, 0.5, 0.5));
  EXPECT_FALSE(monotone.has_backflow);
  EXPECT_EQ(monotone.n_inf, 0.0);
  EXPECT_LT(monotone.n_inf_quadrature, 1e-9);
}

TEST(Blp, NoisyOnsetFoundByScan) {
  // classical_noise(1, 1, 0) is the ideal switch in the other parametrization.
  const auto r = blp_measure(excited(), 1.0, SwitchConfig::classical_noise(1.0, 1.0, 0.0));
  EXPECT_NEAR(r.n_inf, kNinf, 1e-8);
  const auto scanned = blp_measure(excited(), 1.0, SwitchConfig::quantum_noise(0.5, 0.5));
  EXPECT_GE(scanned.n_inf, 0.0);
}

TEST(RhpG, Examples) {
  const double g = 1.0;
  const auto family = switched_map_family(depolarizing(g), SwitchConfig::ideal());
  for (double t : {0.0, 0.1, 0.3, 0.45}) EXPECT_LE(std::abs(rhp_g(family, t, 1e-4)), 1e-6) << t;
  EXPECT_LE(std::abs(rhp_g(family, kTMinusUnit, 1e-4)), 1e-6);
  for (double t : {0.6, 1.0, 2.5}) {
    EXPECT_NEAR(rhp_g(family, t, 1e-4), 6.0 * std::abs(gamma_S_closed_form(t, g)), 1e-4) << t;
  }
}

TEST(Rhp, MeasureIsGammaIndependent) {
  for (double g : {0.5, 2.0}) {
    const auto r = rhp_measure(g);
    EXPECT_NEAR(r.n_s, kNs, 1e-6) << g;
    EXPECT_NEAR(r.n_s_normalized, kNs / (1 + kNs), 1e-6);
    EXPECT_NEAR(r.t_minus, kTMinusUnit / g, 1e-8);
    EXPECT_LE(r.tail_bound, 1e-8);
  }
}

TEST(Rhp, MarkovianChannelHasNoWindows) {
  const auto r = rhp_measure_for_family(channel_map_family(depolarizing(1.0)), 1.0, 5.0);
  EXPECT_TRUE(r.windows.empty());
  EXPECT_EQ(r.n_s, 0.0);
  EXPECT_TRUE(std::isnan(r.t_minus));
}

TEST(Bridge, Examples) {
  const auto zero = qsm_blp_bridge(0.0, 0.0);
  EXPECT_EQ(zero.q_s_infinity, 0.0);
  EXPECT_EQ(zero.n_s_infinity, 0.0);
  const double d = (2.0 * kSqrt3 - 3.0) / 6.0;
  EXPECT_NEAR(qsm_blp_bridge(kNinf, d).q_s_infinity, 0.1, 1e-15);
  const auto strong = qsm_blp_bridge(1e8, 0.2);
  EXPECT_NEAR(strong.n_s_infinity_from_blp, 1e8 / (1 + 1e8), 1e-8);
  EXPECT_THROW(qsm_blp_bridge(-1.0, 0.0), DomainError);
}

TEST(NonMarkovReport, Invariants) {
  const auto r = nonmarkov_report(excited(), 1.0);
  EXPECT_NEAR(r.n_s_normalized, r.n_s / (1 + r.n_s), 1e-15);
  EXPECT_NEAR(r.n_blp_normalized, r.n_inf / (1 + r.n_inf), 1e-15);
  EXPECT_NEAR(r.q_s_infinity, 0.1, 1e-8);
  EXPECT_NEAR(r.t_minus, kTMinusUnit, 1e-10);
}

TEST(NsSurface, Corners) {
  EXPECT_EQ(ns_for_rates({0.0, 0.0, 0.0}), 0.0);
  EXPECT_NEAR(ns_for_rates(PauliRates::uniform(0.6)), kNs / (1 + kNs), 1e-6);
}

}  // namespace
}  // namespace qswitch
