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

#ifndef ENTDETECT_LINALG_HPP
#define ENTDETECT_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "entdetect/common.hpp"

namespace entdetect {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix3 = Eigen::Matrix3d;
using RealVector3 = Eigen::Vector3d;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; the
/// eigenvectors are the matching columns.
struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Kronecker product a ⊗ b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline bool is_finite(const ComplexMatrix& m) { return m.allFinite(); }

/// Max-abs deviation of m from its adjoint.
inline double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw NotHermitian("hermitian_eig: matrix is not square");
  }
  double err = hermiticity_error(m);
  if (!(err <= kHermiticityTol)) {
    throw NotHermitian("hermitian_eig: |m - m^dagger|_max = " + std::to_string(err));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NotHermitian("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Singular values of a real 3x3 matrix, descending. Their sum is Tr sqrt(T^T T).
inline RealVector3 singular_values_3x3(const RealMatrix3& t) {
  Eigen::JacobiSVD<RealMatrix3> svd(t);
  RealVector3 s = svd.singularValues();
  std::sort(s.data(), s.data() + 3, std::greater<>());
  return s;
}

/// Tr sqrt(R) for a symmetric positive semi-definite 3x3 matrix R. Negative
/// rounding residue in the spectrum is clamped to zero.
inline double trace_sqrt_psd(const RealMatrix3& r) {
  Eigen::SelfAdjointEigenSolver<RealMatrix3> solver(0.5 * (r + r.transpose()));
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) sum += std::sqrt(std::max(0.0, solver.eigenvalues()(i)));
  return sum;
}

namespace detail {

// Ginibre entries with E|z|^2 = 1, filled column-major so the first column
// always consumes the first 2*dim normal draws.
inline ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace detail

/// Haar-distributed unitary: QR of a Ginibre matrix, with the phases of the
/// triangular factor's diagonal moved into Q. Without that correction the
/// result is not Haar.
inline ComplexMatrix haar_unitary(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw InvalidParams("haar_unitary: dim must be >= 1");
  ComplexMatrix g = detail::ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex diag = r(j, j);
    double mod = std::abs(diag);
    Complex phase = mod > 0.0 ? diag / mod : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

/// First column of haar_unitary(dim, rng) computed from the same draws, i.e.
/// a uniformly random unit vector. The generator advances by 2*dim normal
/// draws instead of 2*dim*dim.
inline ComplexVector haar_state(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw InvalidParams("haar_state: dim must be >= 1");
  ComplexVector g = detail::ginibre(dim, 1, rng).col(0);
  return g / g.norm();
}

inline ComplexMatrix pauli(int index) {
  ComplexMatrix s(2, 2);
  switch (index) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw InvalidParams("pauli: index must be in 0..3");
  }
  return s;
}

}  // namespace entdetect

#endif  // ENTDETECT_LINALG_HPP
