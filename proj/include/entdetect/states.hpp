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

#ifndef ENTDETECT_STATES_HPP
#define ENTDETECT_STATES_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "entdetect/common.hpp"
#include "entdetect/linalg.hpp"

namespace entdetect {

/// Bipartite density matrix on C^dimA ⊗ C^dimB (Hermitian, unit trace, PSD).
class DensityMatrix {
 public:
  /// Validates every invariant and throws InvalidState naming the first one
  /// that fails.
  DensityMatrix(int dim_a, int dim_b, ComplexMatrix matrix)
      : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
    if (auto why = validation_error(dim_a_, dim_b_, matrix_)) throw InvalidState(*why);
  }

  /// Skips validation. Only for matrices that satisfy the invariants by
  /// construction (tested separately).
  static DensityMatrix trusted(int dim_a, int dim_b, ComplexMatrix matrix) {
    return DensityMatrix(dim_a, dim_b, std::move(matrix), TrustedTag{});
  }

  /// Empty optional when the candidate is a valid density matrix, otherwise
  /// a human-readable description of the violated invariant.
  static std::optional<std::string> validation_error(int dim_a, int dim_b, const ComplexMatrix& m) {
    std::ostringstream why;
    if (dim_a < 1 || dim_b < 1) return std::string("dimensions must be >= 1");
    const Eigen::Index n = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (m.rows() != n || m.cols() != n) {
      why << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << n << "x" << n;
      return why.str();
    }
    if (!m.allFinite()) return std::string("matrix has non-finite entries");
    double herm = hermiticity_error(m);
    if (herm > kHermiticityTol) {
      why << "not Hermitian: max |rho - rho^dagger| = " << herm;
      return why.str();
    }
    Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kHermiticityTol) {
      why << "trace deviation: trace = " << tr.real() << " (expected 1)";
      return why.str();
    }
    double lmin = hermitian_eig(m).eigenvalues(0);
    if (lmin < -kHermiticityTol) {
      why << "not positive semi-definite: minimum eigenvalue = " << lmin;
      return why.str();
    }
    return std::nullopt;
  }

  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  struct TrustedTag {};
  DensityMatrix(int dim_a, int dim_b, ComplexMatrix matrix, TrustedTag)
      : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {}

  int dim_a_;
  int dim_b_;
  ComplexMatrix matrix_;
};

/// v|psi><psi| + (1-v)/D · I kept as (psi, v). Every state family in this
/// library has this form, and the compact representation lets reductions and
/// local unitaries act on a D-vector instead of a DxD matrix.
struct NoisyPureState {
  int dim_a = 0;
  int dim_b = 0;
  ComplexVector psi;  ///< unit vector, index a*dim_b + b
  double v = 1.0;

  int dim() const noexcept { return dim_a * dim_b; }

  /// Amplitudes arranged as a dim_a x dim_b matrix C with psi = Σ C_ab |ab>.
  ComplexMatrix coefficients() const {
    ComplexMatrix c(dim_a, dim_b);
    for (int a = 0; a < dim_a; ++a)
      for (int b = 0; b < dim_b; ++b) c(a, b) = psi(a * dim_b + b);
    return c;
  }

  static NoisyPureState from_coefficients(const ComplexMatrix& c, double v) {
    NoisyPureState s{static_cast<int>(c.rows()), static_cast<int>(c.cols()),
                     ComplexVector(c.size()), v};
    for (int a = 0; a < s.dim_a; ++a)
      for (int b = 0; b < s.dim_b; ++b) s.psi(a * s.dim_b + b) = c(a, b);
    return s;
  }

  DensityMatrix to_density() const {
    const int n = dim();
    ComplexMatrix m = v * (psi * psi.adjoint());
    m.diagonal().array() += (1.0 - v) / n;
    return DensityMatrix::trusted(dim_a, dim_b, std::move(m));
  }

  /// Tr rho^2 = v^2 + (1 - v^2)/D for a unit psi.
  double purity() const {
    const double n = dim();
    return v * v + (1.0 - v * v) / n;
  }
};

/// Incomplete-permutation-symmetric family: Schmidt rank r, the first r-1
/// Schmidt coefficients equal alpha, the last one alpha_r.
struct IcpsParams {
  int d = 2;
  int r = 2;
  double alpha = 0.0;
  double v = 1.0;

  double alpha_max() const { return 1.0 / std::sqrt(static_cast<double>(r - 1)); }

  double alpha_r() const {
    return std::sqrt(std::max(0.0, 1.0 - (r - 1) * alpha * alpha));
  }

  void validate() const {
    std::ostringstream why;
    if (d < 2) why << "d must be >= 2 (got " << d << ")";
    else if (r < 2 || r > d) why << "r must satisfy 2 <= r <= d (got r=" << r << ", d=" << d << ")";
    else if (!(alpha >= 0.0) || alpha > alpha_max() * (1.0 + 1e-12))
      why << "alpha must lie in [0, 1/sqrt(r-1)] (got " << alpha << ")";
    else if (!(v >= 0.0 && v <= 1.0)) why << "v must lie in [0, 1] (got " << v << ")";
    if (!why.str().empty()) throw InvalidParams("IcpsParams: " + why.str());
  }
};

struct QuasiPureParams {
  int d = 2;
  double v = 1.0;
  std::uint64_t seed = 0;

  double noise_level() const { return 1.0 - v; }
};

inline NoisyPureState make_icps_noisy(const IcpsParams& p) {
  p.validate();
  ComplexMatrix c = ComplexMatrix::Zero(p.d, p.d);
  for (int j = 0; j + 1 < p.r; ++j) c(j, j) = p.alpha;
  c(p.r - 1, p.r - 1) = p.alpha_r();
  return NoisyPureState::from_coefficients(c, p.v);
}

inline DensityMatrix make_icps(const IcpsParams& p) { return make_icps_noisy(p).to_density(); }

/// v|psi_P><psi_P| + (1-v)/d^2 · I with psi_P = U|0>|0>, U Haar on C^(d^2).
/// Only the first column of U is needed; haar_state yields exactly that
/// column from the same draws.
inline NoisyPureState make_quasi_pure_noisy(const QuasiPureParams& p, Rng& rng) {
  if (p.d < 1) throw InvalidParams("QuasiPureParams: d must be >= 1");
  if (!(p.v >= 0.0 && p.v <= 1.0)) throw InvalidParams("QuasiPureParams: v must lie in [0, 1]");
  return NoisyPureState{p.d, p.d, haar_state(static_cast<Eigen::Index>(p.d) * p.d, rng), p.v};
}

inline DensityMatrix make_quasi_pure(const QuasiPureParams& p, Rng& rng) {
  return make_quasi_pure_noisy(p, rng).to_density();
}

inline DensityMatrix make_quasi_pure(const QuasiPureParams& p) {
  Rng rng = make_stream(p.seed, 0);
  return make_quasi_pure(p, rng);
}

inline DensityMatrix apply_white_noise(const DensityMatrix& rho, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw InvalidParams("apply_white_noise: v must lie in [0, 1]");
  ComplexMatrix m = v * rho.matrix();
  m.diagonal().array() += (1.0 - v) / rho.dim();
  return DensityMatrix::trusted(rho.dim_a(), rho.dim_b(), std::move(m));
}

/// Pure state density matrix |psi><psi| (psi normalized here).
inline DensityMatrix pure_density(int dim_a, int dim_b, const ComplexVector& psi) {
  ComplexVector u = psi / psi.norm();
  return DensityMatrix(dim_a, dim_b, u * u.adjoint());
}

}  // namespace entdetect

#endif  // ENTDETECT_STATES_HPP
