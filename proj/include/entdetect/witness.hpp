// Copyright 2026 The entdetect Authors
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

#ifndef ENTDETECT_WITNESS_HPP
#define ENTDETECT_WITNESS_HPP

#include <algorithm>
#include <array>

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"
#include "entdetect/transforms.hpp"

namespace entdetect {

/// rho2 = 1/4 (I⊗I + a·σ⊗I + I⊗b·σ + Σ T_mn σ_m⊗σ_n).
struct PauliDecomposition {
  RealVector3 a = RealVector3::Zero();
  RealVector3 b = RealVector3::Zero();
  RealMatrix3 t = RealMatrix3::Zero();

  ComplexMatrix reconstruct() const {
    ComplexMatrix m = kron(pauli(0), pauli(0));
    for (int i = 0; i < 3; ++i) {
      m += a(i) * kron(pauli(i + 1), pauli(0));
      m += b(i) * kron(pauli(0), pauli(i + 1));
      for (int j = 0; j < 3; ++j) m += t(i, j) * kron(pauli(i + 1), pauli(j + 1));
    }
    return 0.25 * m;
  }
};

struct WitnessOutcome {
  double fef_w = 0.0;   ///< max(0, score)/2
  double score = -1.0;  ///< Tr sqrt(T^T T) - 1
  bool detected = false;
  LevelSelection selection{};
  LutTag strategy = LutTag::Identity;
};

namespace detail {

inline const std::array<ComplexMatrix, 16>& pauli_products() {
  static const std::array<ComplexMatrix, 16> products = [] {
    std::array<ComplexMatrix, 16> out;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) out[4 * m + n] = kron(pauli(m), pauli(n));
    return out;
  }();
  return products;
}

// Tr[rho P] = Σ_ij rho_ij P_ji
inline double expectation(const ComplexMatrix& rho, const ComplexMatrix& p) {
  Complex acc = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc += rho(i, j) * p(j, i);
  return acc.real();
}

}  // namespace detail

inline PauliDecomposition pauli_decompose(const DensityMatrix& rho2) {
  if (rho2.dim_a() != 2 || rho2.dim_b() != 2) throw InvalidParams("pauli_decompose: expected a two-qubit state");
  const auto& prod = detail::pauli_products();
  const ComplexMatrix& m = rho2.matrix();
  PauliDecomposition out;
  for (int i = 0; i < 3; ++i) {
    out.a(i) = detail::expectation(m, prod[4 * (i + 1)]);
    out.b(i) = detail::expectation(m, prod[i + 1]);
    for (int j = 0; j < 3; ++j) out.t(i, j) = detail::expectation(m, prod[4 * (i + 1) + (j + 1)]);
  }
  return out;
}

/// Witness outcome from a score value Tr sqrt(R) - 1.
inline WitnessOutcome outcome_from_score(double score) {
  WitnessOutcome out;
  out.score = score;
  out.fef_w = 0.5 * std::max(0.0, score);
  out.detected = score > kWitnessTol;
  return out;
}

/// Fully-entangled-fraction witness. A positive score certifies entanglement.
inline WitnessOutcome fef_witness(const DensityMatrix& rho2) {
  RealMatrix3 t = pauli_decompose(rho2).t;
  return outcome_from_score(singular_values_3x3(t).sum() - 1.0);
}

inline WitnessOutcome fef_witness(const DensityMatrix& rho2, const LevelSelection& sel, LutTag strategy) {
  WitnessOutcome out = fef_witness(rho2);
  out.selection = sel;
  out.strategy = strategy;
  return out;
}

/// Reduce then witness; a zero-probability reduction is "not detected".
template <class State>
WitnessOutcome witness_selection(const State& rho, const LevelSelection& sel, LutTag strategy) {
  auto reduced = try_reduce_to_two_qubits(rho, sel);
  if (!reduced) {
    WitnessOutcome out = outcome_from_score(-1.0);
    out.selection = sel;
    out.strategy = strategy;
    return out;
  }
  return fef_witness(reduced->state, sel, strategy);
}

}  // namespace entdetect

#endif  // ENTDETECT_WITNESS_HPP
