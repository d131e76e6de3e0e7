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

#include "entdetect/states.hpp"
#include "test_util.hpp"

namespace entdetect {
namespace {

using testing::max_abs;

TEST(DensityMatrix, RejectsInvalidMatrices) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) * 0.225;  // trace 0.9
  try {
    DensityMatrix rho(2, 2, m);
    FAIL() << "trace 0.9 accepted";
  } catch (const InvalidState& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg.diagonal() << 0.6, 0.6, -0.2, 0.0;
  EXPECT_THROW(DensityMatrix(2, 2, neg), InvalidState);
  ComplexMatrix nonherm = ComplexMatrix::Identity(4, 4) / 4.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(2, 2, nonherm), InvalidState);
  EXPECT_THROW(DensityMatrix(2, 3, ComplexMatrix::Identity(4, 4) / 4.0), InvalidState);
}

TEST(Icps, ParameterValidation) {
  EXPECT_THROW(make_icps({3, 3, 0.8, 0.5}), InvalidParams);  // alpha > 1/sqrt(2)
  EXPECT_THROW(make_icps({3, 4, 0.1, 0.5}), InvalidParams);  // r > d
  EXPECT_THROW(make_icps({3, 1, 0.1, 0.5}), InvalidParams);
  EXPECT_THROW(make_icps({3, 2, 0.1, 1.5}), InvalidParams);
  EXPECT_NO_THROW(make_icps({3, 3, 1.0 / std::sqrt(2.0), 0.5}));
}

TEST(Icps, IsotropicCase) {
  for (int d : {2, 3, 5}) {
    IcpsParams p{d, d, 1.0 / std::sqrt(static_cast<double>(d)), 0.7};
    EXPECT_NEAR(p.alpha_r(), p.alpha, 1e-15);
    NoisyPureState s = make_icps_noisy(p);
    ComplexMatrix c = s.coefficients();
    for (int j = 0; j < d; ++j) EXPECT_NEAR(c(j, j).real(), 1.0 / std::sqrt(static_cast<double>(d)), 1e-15);
  }
}

TEST(Icps, ZeroVisibilityIsMaximallyMixed) {
  DensityMatrix rho = make_icps({4, 3, 0.4, 0.0});
  EXPECT_LE(max_abs(rho.matrix() - ComplexMatrix::Identity(16, 16) / 16.0), 1e-15);
}

TEST(Icps, PureRankTwoSpectrum) {
  DensityMatrix rho = make_icps({3, 2, 1.0 / std::sqrt(2.0), 1.0});
  auto s = hermitian_eig(rho.matrix());
  EXPECT_NEAR(s.eigenvalues(8), 1.0, 1e-12);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s.eigenvalues(i), 0.0, 1e-12);
  const double a = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 0)), a * a, 1e-15);  // |00><00|
  EXPECT_NEAR(std::abs(rho.matrix()(0, 4)), a * a, 1e-15);  // |00><11|
}

TEST(Icps, SchmidtSupport) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d = 2; d <= 6; ++d)
    for (int r = 2; r <= d; ++r) {
      IcpsParams p{d, r, u(rng) / std::sqrt(r - 1.0), u(rng)};
      NoisyPureState s = make_icps_noisy(p);
      ComplexMatrix c = s.coefficients();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (i != j || i >= r) {
            EXPECT_EQ(c(i, j), Complex(0.0, 0.0));
          }
      EXPECT_NEAR(s.psi.norm(), 1.0, 1e-14);
      EXPECT_FALSE(DensityMatrix::validation_error(d, d, s.to_density().matrix()).has_value());
    }
}

TEST(QuasiPure, PurityIdentity) {
  // Tr rho^2 = v^2 + (1 - v^2)/d^2 for any seed.
  for (int d : {2, 3, 4}) {
    for (double v : {0.0, 0.2, 0.5, 0.8, 1.0}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        DensityMatrix rho = make_quasi_pure({d, v, seed});
        EXPECT_NEAR(rho.purity(), v * v + (1.0 - v * v) / (d * d), 1e-10);
        EXPECT_FALSE(DensityMatrix::validation_error(d, d, rho.matrix()).has_value());
      }
    }
  }
  EXPECT_NEAR(make_quasi_pure({3, 0.8, 1}).purity(), 0.68, 1e-10);
  EXPECT_NEAR(make_quasi_pure({3, 1.0, 1}).purity(), 1.0, 1e-10);
  EXPECT_NEAR(make_quasi_pure({3, 0.0, 1}).purity(), 1.0 / 9.0, 1e-10);
}

TEST(QuasiPure, ReferenceVectorChoiceIsIrrelevant) {
  // U|00> and U|k> have the same distribution for Haar U; compare the mean
  // largest Schmidt coefficient for two reference columns.
  Rng r1 = make_stream(8, 0), r2 = make_stream(8, 1);
  double m0 = 0.0, m1 = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix u0 = haar_unitary(9, r1);
    ComplexMatrix u1 = haar_unitary(9, r2);
    auto top = [](const ComplexVector& v) {
      ComplexMatrix c(3, 3);
      for (int k = 0; k < 9; ++k) c(k / 3, k % 3) = v(k);
      return Eigen::JacobiSVD<ComplexMatrix>(c).singularValues()(0);
    };
    m0 += top(u0.col(0));
    m1 += top(u1.col(4));
  }
  EXPECT_NEAR(m0 / n, m1 / n, 0.01);
}

TEST(WhiteNoise, Examples) {
  ComplexVector phi = testing::phi_plus();
  DensityMatrix rho(2, 2, phi * phi.adjoint());
  EXPECT_LE(max_abs(apply_white_noise(rho, 1.0).matrix() - rho.matrix()), 0.0);
  EXPECT_LE(max_abs(apply_white_noise(rho, 0.0).matrix() - ComplexMatrix::Identity(4, 4) / 4.0), 1e-16);
  auto s = hermitian_eig(apply_white_noise(rho, 0.5).matrix());
  EXPECT_NEAR(s.eigenvalues(0), 0.125, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 0.125, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 0.125, 1e-14);
  EXPECT_NEAR(s.eigenvalues(3), 0.625, 1e-14);
  EXPECT_THROW(apply_white_noise(rho, 1.1), InvalidParams);
}

TEST(NoisyPureState, MatchesDenseMixture) {
  Rng rng(4);
  NoisyPureState s = make_quasi_pure_noisy({3, 0.37, 0}, rng);
  DensityMatrix dense = apply_white_noise(pure_density(3, 3, s.psi), 0.37);
  EXPECT_LE(max_abs(s.to_density().matrix() - dense.matrix()), 1e-15);
  EXPECT_NEAR(s.purity(), dense.purity(), 1e-12);
}

}  // namespace
}  // namespace entdetect
