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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "entdetect/oracle.hpp"
#include "entdetect/witness.hpp"
#include "test_util.hpp"

namespace entdetect {
namespace {

using testing::max_abs;

TEST(PauliDecompose, MaximallyMixed) {
  PauliDecomposition p = pauli_decompose(testing::maximally_mixed(2, 2));
  EXPECT_LE(p.a.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(p.b.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(p.t.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliDecompose, PhiPlus) {
  PauliDecomposition p = pauli_decompose(pure_density(2, 2, testing::phi_plus()));
  RealMatrix3 expected = RealVector3(1, -1, 1).asDiagonal();
  EXPECT_LE((p.t - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(p.a.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(p.b.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliDecompose, ProductZeroZero) {
  PauliDecomposition p = pauli_decompose(pure_density(2, 2, testing::basis_vector(4, 0)));
  EXPECT_LE((p.a - RealVector3(0, 0, 1)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((p.b - RealVector3(0, 0, 1)).cwiseAbs().maxCoeff(), 1e-15);
  RealMatrix3 expected = RealVector3(0, 0, 1).asDiagonal();
  EXPECT_LE((p.t - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PauliDecompose, ReconstructsRandomStates) {
  Rng rng(1);
  for (int rep = 0; rep < 200; ++rep) {
    DensityMatrix rho = testing::random_density(2, 2, rng, 1 + rep % 4);
    PauliDecomposition p = pauli_decompose(rho);
    EXPECT_LE(max_abs(p.reconstruct() - rho.matrix()), 1e-10);
    EXPECT_LE(p.t.cwiseAbs().maxCoeff(), 1.0 + 1e-10);
    EXPECT_LE(p.a.cwiseAbs().maxCoeff(), 1.0 + 1e-10);
    EXPECT_LE(p.b.cwiseAbs().maxCoeff(), 1.0 + 1e-10);
  }
}

TEST(FefWitness, Examples) {
  WitnessOutcome bell = fef_witness(pure_density(2, 2, testing::phi_plus()));
  EXPECT_NEAR(bell.score, 2.0, 1e-12);
  EXPECT_NEAR(bell.fef_w, 1.0, 1e-12);
  EXPECT_TRUE(bell.detected);

  WitnessOutcome prod = fef_witness(pure_density(2, 2, testing::basis_vector(4, 0)));
  EXPECT_NEAR(prod.score, 0.0, 1e-12);
  EXPECT_EQ(prod.fef_w, 0.0);
  EXPECT_FALSE(prod.detected);

  WitnessOutcome w = fef_witness(testing::werner(0.6));
  EXPECT_NEAR(w.score, 0.8, 1e-12);
  EXPECT_NEAR(w.fef_w, 0.4, 1e-12);
  EXPECT_TRUE(w.detected);

  EXPECT_FALSE(fef_witness(testing::werner(1.0 / 3.0)).detected);
}

TEST(FefWitness, OutcomeInvariants) {
  Rng rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    WitnessOutcome o = fef_witness(testing::random_density(2, 2, rng, 1 + rep % 4));
    EXPECT_DOUBLE_EQ(o.fef_w, 0.5 * std::max(0.0, o.score));
    EXPECT_EQ(o.detected, o.score > kWitnessTol);
    EXPECT_GE(o.fef_w, 0.0);
    EXPECT_LE(o.fef_w, 1.0 + 1e-12);
  }
}

TEST(FefWitness, SoundAgainstPartialTranspose) {
  // Zero false positives over 10^4 random two-qubit states of mixed rank.
  Rng rng(3);
  int detections = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    DensityMatrix rho = testing::random_density(2, 2, rng, 1 + rep % 4);
    bool detected = fef_witness(rho).detected;
    if (detected) {
      ++detections;
      EXPECT_TRUE(is_npt(rho)) << "witness fired on a PPT state";
    }
  }
  EXPECT_GT(detections, 100);
}

TEST(FefWitness, LocalUnitaryInvariance) {
  Rng rng(4);
  for (int rep = 0; rep < 200; ++rep) {
    DensityMatrix rho = testing::random_density(2, 2, rng);
    ComplexMatrix w = kron(haar_unitary(2, rng), haar_unitary(2, rng));
    DensityMatrix rotated(2, 2, w * rho.matrix() * w.adjoint());
    EXPECT_NEAR(fef_witness(rotated).score, fef_witness(rho).score, 1e-9);
  }
}

TEST(FefWitness, SchmidtPureStates) {
  // cos t|00> + sin t|11> has T = diag(sin 2t, -sin 2t, 1), score 2 sin 2t.
  for (int k = 0; k <= 40; ++k) {
    const double t = k * (std::numbers::pi / 2.0) / 40.0;
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = std::cos(t);
    psi(3) = std::sin(t);
    DensityMatrix rho(2, 2, psi * psi.adjoint());
    RealVector3 sv = singular_values_3x3(pauli_decompose(rho).t);
    const double s2 = std::abs(std::sin(2.0 * t));
    EXPECT_NEAR(sv(0), 1.0, 1e-10);
    EXPECT_NEAR(sv(1), s2, 1e-10);
    EXPECT_NEAR(sv(2), s2, 1e-10);
    EXPECT_NEAR(fef_witness(rho).score, 2.0 * s2, 1e-10);
  }
}

}  // namespace
}  // namespace entdetect
