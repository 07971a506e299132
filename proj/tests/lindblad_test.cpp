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

#include "qswitch/lindblad.hpp"
#include "qswitch/measures.hpp"

namespace qswitch {
namespace {

const double kTMinusUnit = std::log(3.0 + 2.0 * std::sqrt(3.0)) / 4.0;

MapFamily switched(double gamma) {
  return switched_map_family(depolarizing_family(PauliRates::uniform(gamma)), SwitchConfig::ideal());
}

MapFamily plain(double gamma) { return channel_map_family(depolarizing_family(PauliRates::uniform(gamma))); }

RealMatrix diag4(double a, double b) {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m(0, 0) = a;
  m(1, 1) = m(2, 2) = m(3, 3) = b;
  return m;
}

TEST(BasisSet, Orthonormal) {
  for (int d = 2; d <= 5; ++d) {
    const auto basis = BasisSet::for_dimension(d);
    ASSERT_EQ(basis.size(), d * d);
    for (int i = 0; i < basis.size(); ++i) {
      EXPECT_TRUE(is_hermitian(basis[i], 1e-15));
      for (int j = 0; j < basis.size(); ++j) {
        EXPECT_NEAR(std::abs((basis[i] * basis[j]).trace()), i == j ? 1.0 : 0.0, 1e-14);
      }
    }
  }
}

TEST(FMatrix, Examples) {
  const auto basis = BasisSet::pauli();
  const MapFamily identity = [](double) -> LinearMap { return [](const ComplexMatrix& x) { return x; }; };
  EXPECT_LT((f_matrix(identity, 0.3, basis) - RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  const double t = 0.35, g = 1.2;
  EXPECT_LT((f_matrix(plain(g), t, basis) - diag4(1.0, std::exp(-4 * g * t))).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((f_matrix(switched(g), t, basis) - diag4(1.0, switched_decay_factor(t, g))).cwiseAbs().maxCoeff(),
            1e-13);
}

TEST(FMatrix, RejectsNonHermiticityPreservingMap) {
  const MapFamily twisted = [](double) -> LinearMap {
    return [](const ComplexMatrix& x) -> ComplexMatrix { return Complex(0.0, 1.0) * x; };
  };
  EXPECT_THROW(f_matrix(twisted, 0.0, BasisSet::pauli()), LinearityError);
}

TEST(LMatrix, Examples) {
  const auto basis = BasisSet::pauli();
  for (double g : {0.5, 1.0, 2.0}) {
    const double h = kDefaultRelativeStep / g;
    EXPECT_LT((l_matrix(plain(g), 0.4 / g, basis, h) - diag4(0.0, -4.0 * g)).cwiseAbs().maxCoeff(), 1e-7 * g);
    EXPECT_LT((l_matrix(switched(g), 0.0, basis, h) - diag4(0.0, -8.0 * g)).cwiseAbs().maxCoeff(), 1e-6 * g);
    const double t = 0.9 / g;
    const double dlnc = -4.0 * gamma_S_closed_form(t, g);
    EXPECT_LT((l_matrix(switched(g), t, basis, h) - diag4(0.0, dlnc)).cwiseAbs().maxCoeff(), 1e-6 * g);
  }
}

TEST(LMatrix, SingularTransferMatrix) {
  const MapFamily erase = [](double) -> LinearMap {
    return [](const ComplexMatrix& x) -> ComplexMatrix { return x.trace() * ComplexMatrix::Identity(2, 2) / 2.0; };
  };
  EXPECT_THROW(l_matrix(erase, 1.0, BasisSet::pauli(), 1e-5), InversionError);
}

TEST(GammaFromC, Examples) {
  const double g = 0.7;
  EXPECT_NEAR(gamma_from_C([g](double t) { return std::exp(-4 * g * t); }, 1.0, 1e-3), g, 1e-10);
  auto c = [g](double t) { return switched_decay_factor(t, g); };
  EXPECT_NEAR(gamma_from_C(c, 0.0, 1e-5), 2.0 * g, 1e-8);
  EXPECT_NEAR(gamma_from_C(c, kTMinusUnit / g, 1e-4), 0.0, 1e-9);
  EXPECT_THROW(gamma_from_C([](double) { return -1.0; }, 1.0, 1e-3), DomainError);
}

TEST(GammaSClosedForm, Examples) {
  for (double g : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(gamma_S_closed_form(0.0, g), 2.0 * g, 1e-14);
    EXPECT_NEAR(gamma_S_closed_form(kTMinusUnit / g, g), 0.0, 1e-14);
    const double late = gamma_S_closed_form(6.0 / g, g);
    EXPECT_LT(late, 0.0);
    EXPECT_GT(late, -1e-9);
  }
}

TEST(PauliRates, FromGenerator) {
  RealMatrix l = RealMatrix::Zero(4, 4);
  const double g1 = 0.3, g2 = 0.5, g3 = 0.9;
  l(1, 1) = -2 * (g2 + g3);
  l(2, 2) = -2 * (g1 + g3);
  l(3, 3) = -2 * (g1 + g2);
  const auto r = pauli_rates_from_generator(l);
  EXPECT_NEAR(r[0], g1, 1e-15);
  EXPECT_NEAR(r[1], g2, 1e-15);
  EXPECT_NEAR(r[2], g3, 1e-15);
  const auto check = cp_divisibility_flag(l, BasisSet::pauli());
  EXPECT_NEAR(check.min_rate, g1, 1e-14);
}

TEST(CpDivisibility, Examples) {
  const auto basis = BasisSet::pauli();
  EXPECT_TRUE(cp_divisibility_flag(RealMatrix::Zero(4, 4), basis).cp_divisible);
  for (double t : {0.0, 0.2, 1.0, 3.0}) {
    EXPECT_TRUE(cp_divisibility_flag(l_matrix(plain(1.0), t, basis, 1e-5), basis).cp_divisible);
  }
  for (double t : {0.05, 0.2, 0.4}) {
    EXPECT_TRUE(cp_divisibility_flag(l_matrix(switched(1.0), t, basis, 1e-5), basis).cp_divisible) << t;
  }
  for (double t : {0.5, 1.0, 2.0}) {
    EXPECT_FALSE(cp_divisibility_flag(l_matrix(switched(1.0), t, basis, 1e-5), basis).cp_divisible) << t;
  }
}

TEST(LindbladReport, SwitchedRatesAreEqual) {
  const auto report = lindblad_report(switched(1.0), 0.8, 1e-5);
  EXPECT_NEAR(report.gamma_s, gamma_S_closed_form(0.8, 1.0), 1e-8);
  EXPECT_NEAR(report.rates[0], report.rates[2], 1e-8);
  EXPECT_FALSE(report.cp_divisible);
}

// Integrating dF/dt = L(t) F with the reconstructed generator recovers F(t).
TEST(LMatrix, ReconstructionIsConsistentUnderIntegration) {
  const auto basis = BasisSet::pauli();
  const double g = 1.0;
  const auto family = switched(g);
  auto generator = [&](double t) { return l_matrix(family, t, basis, kDefaultRelativeStep / g); };
  RealMatrix f = RealMatrix::Identity(4, 4);
  const double dt = 0.01;
  double t = 0.0;
  for (int step = 0; step < 200; ++step) {
    const RealMatrix k1 = generator(t) * f;
    const RealMatrix k2 = generator(t + dt / 2) * (f + dt / 2 * k1);
    const RealMatrix k3 = generator(t + dt / 2) * (f + dt / 2 * k2);
    const RealMatrix k4 = generator(t + dt) * (f + dt * k3);
    f += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    t += dt;
  }
  EXPECT_LT((f - f_matrix(family, t, basis)).cwiseAbs().maxCoeff(), 1e-7);
}

}  // namespace
}  // namespace qswitch
