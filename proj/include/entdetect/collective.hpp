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

#ifndef ENTDETECT_COLLECTIVE_HPP
#define ENTDETECT_COLLECTIVE_HPP

#include <array>
#include <cmath>

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/states.hpp"
#include "entdetect/witness.hpp"

// Two-copy collective measurement of R. Copies are ordered (a, b, a', b'):
// the b and b' qubits go through the singlet observable, a and a' through
// local projectors.

namespace entdetect {

/// S = I - 4|Psi-><Psi-| on two qubits. Equal to Σ_k σ_k ⊗ σ_k.
inline ComplexMatrix singlet_projector_op() {
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::sqrt(2.0);
  singlet(2) = -1.0 / std::sqrt(2.0);
  return ComplexMatrix::Identity(4, 4) - 4.0 * singlet * singlet.adjoint();
}

/// Tr[(rho ⊗ rho) (X_a ⊗ Y_a' ⊗ S_bb')] for a two-qubit state.
inline double two_copy_expectation(const DensityMatrix& rho2, const ComplexMatrix& x_a, const ComplexMatrix& y_a2,
                                   const ComplexMatrix& s_bb) {
  if (rho2.dim_a() != 2 || rho2.dim_b() != 2) throw InvalidParams("two_copy_expectation: expected a two-qubit state");
  const ComplexMatrix& m = rho2.matrix();
  // Σ over (a b a' b') and (c e c' e') of
  //   rho[ab, ce] rho[a'b', c'e'] X[c, a] Y[c', a'] S[e e', b b'].
  Complex acc = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          for (int c = 0; c < 2; ++c)
            for (int e = 0; e < 2; ++e)
              for (int c2 = 0; c2 < 2; ++c2)
                for (int e2 = 0; e2 < 2; ++e2)
                  acc += m(2 * a + b, 2 * c + e) * m(2 * a2 + b2, 2 * c2 + e2) * x_a(c, a) * y_a2(c2, a2) *
                         s_bb(2 * e + e2, 2 * b + b2);
  return acc.real();
}

/// R_ij = Tr[(rho ⊗ rho) S_bb' (σ_i ⊗ σ_j)_aa'], i, j = x, y, z. This
/// evaluates to T T^T, which has the singular values of T^T T.
inline RealMatrix3 collective_R_pauli(const DensityMatrix& rho2) {
  const ComplexMatrix s = singlet_projector_op();
  RealMatrix3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = two_copy_expectation(rho2, pauli(i + 1), pauli(j + 1), s);
  return r;
}

/// Tetrahedral minimal qubit basis: Pi_i = (I + n_i·σ)/2 with
/// n_i = s (±1, ±1, ±1), even number of minus signs, s = 1/sqrt(3).
struct MinimalBasis {
  double s = 1.0 / std::sqrt(3.0);
  std::array<RealVector3, 4> bloch;
  std::array<ComplexMatrix, 4> projectors;

  MinimalBasis() {
    const std::array<RealVector3, 4> signs = {RealVector3(1, 1, 1), RealVector3(1, -1, -1), RealVector3(-1, 1, -1),
                                              RealVector3(-1, -1, 1)};
    for (int i = 0; i < 4; ++i) {
      bloch[i] = s * signs[i];
      ComplexMatrix p = pauli(0);
      for (int k = 0; k < 3; ++k) p += bloch[i](k) * pauli(k + 1);
      projectors[i] = 0.5 * p;
    }
  }

  /// Row i is (1, n_i): Pi_i = 1/2 Σ_mu M_{i mu} σ_mu.
  Eigen::Matrix4d transformation_matrix() const {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i) {
      m(i, 0) = 1.0;
      for (int k = 0; k < 3; ++k) m(i, k + 1) = bloch[i](k);
    }
    return m;
  }
};

/// pi_ij = Tr[(rho ⊗ rho) S_bb' (Pi_i ⊗ Pi_j)_aa'].
struct CollectiveData {
  Eigen::Matrix4d pi = Eigen::Matrix4d::Zero();
  int settings_count = 0;
};

/// Measures the 10 settings i <= j; the rest follow from pi_ij = pi_ji,
/// which holds because swapping the two copies maps one setting onto the
/// other and S is swap-symmetric.
inline CollectiveData measure_minimal(const DensityMatrix& rho2, const MinimalBasis& basis = MinimalBasis()) {
  const ComplexMatrix s = singlet_projector_op();
  CollectiveData data;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      data.pi(i, j) = two_copy_expectation(rho2, basis.projectors[i], basis.projectors[j], s);
      data.pi(j, i) = data.pi(i, j);
      ++data.settings_count;
    }
  return data;
}

/// All 16 settings, without using the symmetry.
inline Eigen::Matrix4d measure_minimal_all(const DensityMatrix& rho2, const MinimalBasis& basis = MinimalBasis()) {
  const ComplexMatrix s = singlet_projector_op();
  Eigen::Matrix4d pi;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) pi(i, j) = two_copy_expectation(rho2, basis.projectors[i], basis.projectors[j], s);
  return pi;
}

/// Since Pi_i = M_i·σ/2, pi = (1/4) M R4 M^T where R4 is the 4x4 two-copy
/// correlation including the identity row and column. Inverting gives
/// R4 = 4 M^-1 pi M^-T; the factor 4 comes from the two 1/2 projector
/// normalizations. R is the lower-right 3x3 block.
inline constexpr double kProjectorScale = 4.0;

inline RealMatrix3 R_from_minimal(const CollectiveData& data, const MinimalBasis& basis = MinimalBasis()) {
  const Eigen::Matrix4d minv = basis.transformation_matrix().inverse();
  const Eigen::Matrix4d r4 = kProjectorScale * minv * data.pi * minv.transpose();
  return r4.bottomRightCorner<3, 3>();
}

inline RealMatrix3 collective_R_minimal(const DensityMatrix& rho2) {
  MinimalBasis basis;
  return R_from_minimal(measure_minimal(rho2, basis), basis);
}

/// Witness score Tr sqrt(R) - 1 from the collective R.
inline WitnessOutcome fef_from_collective(const DensityMatrix& rho2) {
  return outcome_from_score(trace_sqrt_psd(collective_R_minimal(rho2)) - 1.0);
}

}  // namespace entdetect

#endif  // ENTDETECT_COLLECTIVE_HPP
