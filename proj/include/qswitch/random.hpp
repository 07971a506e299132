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

#include <cstdint>
#include <random>

#include "qswitch/channels.hpp"
#include "qswitch/linalg.hpp"
#include "qswitch/switch.hpp"

namespace qswitch {

/// Seeded generator with platform-independent transforms (the standard
/// distributions are implementation defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Unit-rate exponential.
  double exponential();
  /// Standard normal (Box-Muller, one draw per call).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Ginibre-distributed mixed state: G G^dagger / Tr[G G^dagger].
DensityMatrix random_density_matrix(int dim, Rng& rng);

/// Haar-random pure state.
DensityMatrix random_pure_state(int dim, Rng& rng);

/// p_kl drawn uniformly from the probability simplex.
GeneralizedPauliSpec random_generalized_pauli_spec(int dim, Rng& rng);

/// Quantum or classical control noise with every parameter in [0.05, 0.95].
SwitchConfig random_noisy_config(Rng& rng);

}  // namespace qswitch
