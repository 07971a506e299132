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

#include "qswitch/random.hpp"

#include <cmath>

namespace qswitch {

double Rng::exponential() { return -std::log1p(-uniform01()); }

double Rng::normal() {
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  }
  return g;
}

}  // namespace

DensityMatrix random_density_matrix(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("random_density_matrix: dimension must be positive");
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return DensityMatrix::normalized(g * g.adjoint());
}

DensityMatrix random_pure_state(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("random_pure_state: dimension must be positive");
  const ComplexVector v = ginibre(dim, 1, rng).col(0);
  return DensityMatrix::pure(v.normalized());
}

GeneralizedPauliSpec random_generalized_pauli_spec(int dim, Rng& rng) {
  if (dim < 2) throw DomainError("random_generalized_pauli_spec: dimension must be at least 2");
  RealMatrix p(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int l = 0; l < dim; ++l) p(k, l) = rng.exponential();
  }
  p /= p.sum();
  return GeneralizedPauliSpec(p);
}

SwitchConfig random_noisy_config(Rng& rng) {
  auto param = [&rng] { return rng.uniform(0.05, 0.95); };
  if (rng.uniform01() < 0.5) {
    const double p = param();
    return SwitchConfig::quantum_noise(p, param());
  }
  const double p = param();
  const double q1 = param();
  return SwitchConfig::classical_noise(p, q1, param());
}

}  // namespace qswitch
